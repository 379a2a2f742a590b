#include "mps/rpc/messages.hpp"
#include "mps/crypto/hash.hpp"
#include "mps/crypto/hmac.hpp"
#include "mps/tlv.hpp"

#include <algorithm>

namespace mps::rpc {

namespace {

crypto::X25519Key
read_dh_key(ByteSpan value)
{
  if (value.size() != 32)
    throw DecodeError("DH public key must be 32 bytes");
  crypto::X25519Key key;
  std::copy(value.begin(), value.end(), key.begin());
  return key;
}

} // namespace

Buffer
encode_request_params(const RequestParams& p)
{
  Buffer out;
  tlv::append_tlv(out, type::ParaName, encode_name(p.para_name));
  tlv::append_tlv(out, type::DhPublicKey, p.dh_epk);
  if (p.forwarding_hint)
    tlv::append_tlv(out, type::ForwardingHint, encode_name(*p.forwarding_hint));
  return out;
}

RequestParams
decode_request_params(ByteSpan wire)
{
  tlv::ElementSequence seq(wire, {type::ParaName, type::DhPublicKey, type::ForwardingHint});
  RequestParams p;
  p.para_name = decode_name(seq.require(type::ParaName).value);
  p.dh_epk = read_dh_key(seq.require(type::DhPublicKey).value);
  if (auto e = seq.take(type::ForwardingHint))
    p.forwarding_hint = decode_name(e->value);
  seq.finish();
  return p;
}

Buffer
encode_ack_payload(const AckPayload& p)
{
  Buffer out;
  tlv::append_nni_tlv(out, type::Status, static_cast<uint64_t>(p.status));
  if (p.eta_ms)
    tlv::append_nni_tlv(out, type::EtaMs, *p.eta_ms);
  if (p.result_name)
    tlv::append_tlv(out, type::ResultName, encode_name(*p.result_name));
  return out;
}

AckPayload
decode_ack_payload(ByteSpan wire)
{
  tlv::ElementSequence seq(wire, {type::Status, type::EtaMs, type::ResultName});
  AckPayload p;
  uint64_t code = tlv::read_nni(seq.require(type::Status).value);
  if (code > static_cast<uint64_t>(StatusCode::Busy))
    throw UnknownStatus(code);
  p.status = static_cast<StatusCode>(code);
  if (auto e = seq.take(type::EtaMs))
    p.eta_ms = tlv::read_nni(e->value);
  if (auto e = seq.take(type::ResultName))
    p.result_name = decode_name(e->value);
  seq.finish();
  if (p.status == StatusCode::Accepted && (!p.eta_ms || !p.result_name))
    throw DecodeError("accepted ack lacks ETA or result name");
  return p;
}

Buffer
encode_result_outcome(const ResultOutcome& o)
{
  Buffer out;
  if (o.piece)
    tlv::append_tlv(out, type::SignaturePiece, o.piece->bytes());
  else
    tlv::append_tlv(out, type::Denied, {});
  return out;
}

ResultOutcome
decode_result_outcome(ByteSpan wire)
{
  auto e = tlv::read_single(wire);
  if (e.type == type::Denied)
    return {};
  if (e.type != type::SignaturePiece)
    throw DecodeError("unexpected TLV type " + std::to_string(e.type) + " in result");
  try {
    return {crypto::BlsSignature::from_bytes(e.value)};
  }
  catch (const crypto::MalformedPoint& err) {
    throw DecodeError(std::string("signature piece: ") + err.what());
  }
}

Buffer
encode_siginfo_content(const SigInfoContent& c)
{
  Buffer out;
  for (const auto& n : c.signers)
    append_name(out, n);
  if (c.aggregate_pk)
    tlv::append_tlv(out, type::AggregatePublicKey, c.aggregate_pk->bytes());
  return out;
}

SigInfoContent
decode_siginfo_content(ByteSpan wire)
{
  SigInfoContent c;
  tlv::Reader reader(wire);
  while (!reader.empty()) {
    auto e = reader.read();
    if (e.type == tlv::type::Name && !c.aggregate_pk) {
      c.signers.push_back(decode_name_value(e.value));
    }
    else if (e.type == type::AggregatePublicKey && !c.aggregate_pk) {
      try {
        c.aggregate_pk = crypto::BlsPublicKey::from_bytes(e.value);
      }
      catch (const crypto::MalformedPoint& err) {
        throw DecodeError(std::string("aggregate key hint: ") + err.what());
      }
    }
    else if (e.type < tlv::NonCriticalThreshold) {
      throw DecodeError("unexpected TLV type " + std::to_string(e.type) + " in SigInfo");
    }
  }
  auto sorted = c.signers;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DecodeError("SigInfo lists a signer twice");
  return c;
}

Name
random_name(const Name& prefix, std::string_view kind, size_t n, crypto::RandomSource& rng)
{
  Name out = prefix;
  out.append("MPS").append(kind).append(ByteSpan(rng.bytes(n)));
  return out;
}

Name
make_placeholder(const Name& coordinator_prefix, crypto::RandomSource& rng)
{
  return random_name(coordinator_prefix, "siginfo", 16, rng);
}

Name
hmac_key_name(const crypto::SymmetricKey& k_mac)
{
  auto digest = crypto::sha256(k_mac);
  Name out("/MPS/kmac");
  out.append(ByteSpan(digest).first(8));
  return out;
}

void
hmac_sign(DataPacket& data, const crypto::SymmetricKey& k_mac)
{
  data.sig_info = SignatureInfo{SignatureType::HmacSha256, KeyLocator{hmac_key_name(k_mac)}, std::nullopt, std::nullopt};
  auto tag = crypto::hmac_tag(k_mac, tbs_bytes(data));
  data.sig_value.assign(tag.begin(), tag.end());
}

bool
hmac_check(const DataPacket& data, const crypto::SymmetricKey& k_mac)
{
  return data.sig_info.type == SignatureType::HmacSha256 && crypto::hmac_verify(k_mac, tbs_bytes(data), data.sig_value);
}

void
bls_sign_data(DataPacket& data, const Name& key_name, const crypto::BlsSecretKey& sk)
{
  data.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{key_name}, std::nullopt, std::nullopt};
  auto sig = crypto::bls_sign(sk, tbs_bytes(data));
  data.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
}

bool
bls_check_data(const DataPacket& data, const crypto::BlsPublicKey& pk)
{
  if (data.sig_info.type != SignatureType::Bls)
    return false;
  try {
    return crypto::bls_verify(pk, tbs_bytes(data), crypto::BlsSignature::from_bytes(data.sig_value));
  }
  catch (const crypto::MalformedPoint&) {
    return false;
  }
}

} // namespace mps::rpc
