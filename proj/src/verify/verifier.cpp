#include "mps/verify/verifier.hpp"

namespace mps::verify {

namespace {

Verdict
invalid(Failure f, std::string detail, std::vector<Name> signers = {})
{
  return Verdict{f, std::move(detail), std::move(signers)};
}

bool
is_multisigned(const DataPacket& data)
{
  return data.sig_info.type == SignatureType::Bls && !data.sig_info.key_locator.name.empty();
}

} // namespace

std::string_view
to_string(Failure f)
{
  switch (f) {
  case Failure::None:
    return "valid";
  case Failure::NotMultiSigned:
    return "not-multisigned";
  case Failure::SigInfoMismatch:
    return "siginfo-mismatch";
  case Failure::UnknownCoordinator:
    return "unknown-coordinator";
  case Failure::BadSigInfoSignature:
    return "bad-siginfo-signature";
  case Failure::MalformedSigInfo:
    return "malformed-siginfo";
  case Failure::SchemaUnsatisfied:
    return "schema-unsatisfied";
  case Failure::UnknownSigner:
    return "unknown-signer";
  case Failure::BadPop:
    return "bad-pop";
  case Failure::BadAggregate:
    return "bad-aggregate";
  }
  return "?";
}

crypto::BlsPublicKey
aggregate_public_keys_for(std::span<const Name> signers, const schema::KnownSigners& known)
{
  std::vector<crypto::BlsPublicKey> pks;
  for (const auto& name : signers) {
    const auto* cert = known.find(name);
    if (!cert)
      throw UnknownSigner(name);
    pks.push_back(cert->pk);
  }
  return crypto::bls_aggregate_pks(pks);
}

Verdict
verify_multisigned(const DataPacket& signed_data, const schema::PolicySet& policy, const schema::KnownSigners& known,
                   net::Face& face, VerifierOptions options)
{
  if (!is_multisigned(signed_data))
    return invalid(Failure::NotMultiSigned, "packet carries no BLS key locator");
  InterestPacket interest;
  interest.name = signed_data.sig_info.key_locator.name;
  auto siginfo = net::fetch_with_retries(face, interest, options.fetch_timeout_ms, options.fetch_retries + 1);
  if (!siginfo)
    throw FetchTimeout(interest.name);
  return verify_with_siginfo(signed_data, *siginfo, policy, known);
}

Verdict
verify_with_siginfo(const DataPacket& signed_data, const DataPacket& siginfo, const schema::PolicySet& policy,
                    const schema::KnownSigners& known)
{
  if (!is_multisigned(signed_data))
    return invalid(Failure::NotMultiSigned, "packet carries no BLS key locator");
  if (siginfo.name != signed_data.sig_info.key_locator.name || siginfo.content_type != ContentType::SigInfo)
    return invalid(Failure::SigInfoMismatch, "SigInfo " + siginfo.name.to_uri() + " does not match key locator " +
                                               signed_data.sig_info.key_locator.name.to_uri());

  const Name& coordinator_key = siginfo.sig_info.key_locator.name;
  const auto* coordinator = known.find(coordinator_key);
  if (!coordinator)
    return invalid(Failure::UnknownCoordinator, "SigInfo signed by unknown key " + coordinator_key.to_uri());
  // the placeholder lives under the coordinator's own namespace
  if (!coordinator->identity().is_prefix_of(siginfo.name))
    return invalid(Failure::SigInfoMismatch,
                   "SigInfo " + siginfo.name.to_uri() + " is outside " + coordinator->identity().to_uri());
  if (siginfo.sig_info.type != SignatureType::Bls || !rpc::bls_check_data(siginfo, coordinator->pk))
    return invalid(Failure::BadSigInfoSignature, "SigInfo signature does not verify");

  rpc::SigInfoContent content;
  try {
    content = rpc::decode_siginfo_content(siginfo.content);
  }
  catch (const Error& e) {
    return invalid(Failure::MalformedSigInfo, e.what());
  }
  const auto& signers = content.signers;

  if (!schema::verify_signer_set(policy, signed_data.name, signers))
    return invalid(Failure::SchemaUnsatisfied, "signer set does not satisfy the policy for " + signed_data.name.to_uri(),
                   signers);

  std::vector<crypto::BlsPublicKey> pks;
  for (const auto& name : signers) {
    const auto* cert = known.find(name);
    if (!cert)
      return invalid(Failure::UnknownSigner, name.to_uri(), signers);
    if (!crypto::pop_verify(cert->pk, cert->pop))
      return invalid(Failure::BadPop, "proof of possession fails for " + name.to_uri(), signers);
    pks.push_back(cert->pk);
  }

  // the aggregate-key hint in the SigInfo is never used; keys come from certificates
  try {
    auto aggregate_pk = crypto::bls_aggregate_pks(pks);
    auto sig = crypto::BlsSignature::from_bytes(signed_data.sig_value);
    if (!crypto::bls_verify(aggregate_pk, tbs_bytes(signed_data), sig))
      return invalid(Failure::BadAggregate, "aggregate signature does not verify", signers);
  }
  catch (const Error& e) {
    return invalid(Failure::BadAggregate, e.what(), signers);
  }
  return Verdict{Failure::None, {}, signers};
}

} // namespace mps::verify
