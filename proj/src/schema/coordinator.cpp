#include "mps/schema/coordinator.hpp"

#include <algorithm>

namespace mps::schema {

namespace {

bool
refuse(std::string* reason, std::string what)
{
  if (reason)
    *reason = std::move(what);
  return false;
}

const Certificate*
find_anchor(const CoordinatorSchema& cs, const Name& key_name)
{
  auto it = std::find_if(cs.anchors.begin(), cs.anchors.end(),
                         [&](const Certificate& a) { return a.key_name == key_name; });
  return it == cs.anchors.end() ? nullptr : &*it;
}

} // namespace

CoordinatorSchema
CoordinatorSchema::make(const Name& signer_prefix, std::string_view request_pattern, std::string_view key_pattern,
                        std::vector<Certificate> anchors)
{
  if (anchors.empty())
    throw Error("coordinator schema needs at least one anchor");
  static constexpr std::string_view token = "/<SignerPrefix>";
  std::string request(request_pattern);
  if (request.starts_with(token)) {
    std::string head = signer_prefix.empty() ? "" : signer_prefix.to_uri();
    request = head + request.substr(token.size());
  }
  return CoordinatorSchema{signer_prefix, NamePattern::parse(request), NamePattern::parse(key_pattern),
                           std::move(anchors)};
}

Name
request_prefix(const Name& signer_prefix)
{
  Name out = signer_prefix;
  out.append("MPS").append("request");
  return out;
}

bool
verify_coordinator(const CoordinatorSchema& cs, const InterestPacket& request, const KnownSigners& keychain,
                   std::optional<uint64_t> now_ms, std::string* reason)
{
  if (!request.sig_info || request.sig_info->type != SignatureType::Bls)
    return refuse(reason, "request is not BLS-signed");
  if (!cs.request_pattern.matches(request.name))
    return refuse(reason, "request name " + request.name.to_uri() + " does not match " + cs.request_pattern.to_string());
  const Name& key_name = request.sig_info->key_locator.name;
  if (!cs.key_pattern.matches(key_name))
    return refuse(reason, "key " + key_name.to_uri() + " does not match " + cs.key_pattern.to_string());
  if (!is_key_name(key_name))
    return refuse(reason, "key locator " + key_name.to_uri() + " is not a key name");

  Name head = request_prefix(cs.signer_prefix);
  if (!head.is_prefix_of(request.name) || request.name.size() < head.size() + 2)
    return refuse(reason, "request is not addressed to " + head.to_uri());
  Name claimed = request.name.sub_name(head.size(), request.name.size() - head.size() - 1);
  Name identity = key_name.prefix(-2);
  if (claimed != identity)
    return refuse(reason, "request names coordinator " + claimed.to_uri() + " but is signed by " + key_name.to_uri());

  // Walk issuer links from the signing key up to an anchor.
  const Certificate* cert = find_anchor(cs, key_name);
  if (!cert)
    cert = keychain.find(key_name);
  if (!cert)
    return refuse(reason, "no certificate for " + key_name.to_uri());
  const Certificate* leaf = cert;
  for (size_t depth = 0;; ++depth) {
    if (now_ms && cert->validity && !cert->validity->contains(*now_ms))
      return refuse(reason, "certificate " + cert->key_name.to_uri() + " is outside its validity period");
    const Certificate* anchor = find_anchor(cs, cert->key_name);
    if (anchor && anchor->pk == cert->pk)
      break;
    if (depth == CoordinatorSchema::MaxChainDepth)
      return refuse(reason, "certificate chain of " + key_name.to_uri() + " exceeds depth " +
                              std::to_string(CoordinatorSchema::MaxChainDepth));
    if (cert->self_signed())
      return refuse(reason, "chain of " + key_name.to_uri() + " ends at un-anchored " + cert->key_name.to_uri());
    const Certificate* issuer = find_anchor(cs, cert->issuer());
    if (!issuer)
      issuer = keychain.find(cert->issuer());
    if (!issuer)
      return refuse(reason, "issuer " + cert->issuer().to_uri() + " of " + cert->key_name.to_uri() + " is unknown");
    if (!verify_certificate_signature(*cert, issuer->pk))
      return refuse(reason, "bad issuer signature on " + cert->key_name.to_uri());
    cert = issuer;
  }

  try {
    auto sig = crypto::BlsSignature::from_bytes(request.sig_value);
    if (!crypto::bls_verify(leaf->pk, tbs_bytes(request), sig))
      return refuse(reason, "request signature does not verify");
  }
  catch (const crypto::MalformedPoint&) {
    return refuse(reason, "request signature is malformed");
  }
  return true;
}

} // namespace mps::schema
