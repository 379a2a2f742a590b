#include "mps/rpc/session.hpp"
#include "mps/crypto/aead.hpp"
#include "mps/tlv.hpp"

namespace mps::rpc {

namespace {

void
require_state(const RpcSession& s, SessionState expected, std::string_view op)
{
  if (s.state != expected)
    throw StateError(std::string(op) + " requires state " + std::string(to_string(expected)) + ", session is " +
                     std::string(to_string(s.state)));
}

Buffer
transcript(const InterestPacket& request)
{
  Buffer t = tbs_bytes(request);
  append(t, encode_name(request.name)); // the ack carries the request's name
  return t;
}

} // namespace

std::string_view
to_string(SessionState s)
{
  switch (s) {
  case SessionState::Init:
    return "Init";
  case SessionState::RequestSent:
    return "RequestSent";
  case SessionState::AckReceived:
    return "AckReceived";
  case SessionState::ParamServed:
    return "ParamServed";
  case SessionState::Done:
    return "Done";
  case SessionState::Failed:
    return "Failed";
  }
  return "?";
}

RpcSession
open_session(const schema::Certificate& signer, const Name& coordinator_prefix, crypto::RandomSource& rng)
{
  RpcSession s;
  s.signer_prefix = signer.routable_prefix();
  s.signer_key = signer.key_name;
  s.dh = crypto::dh_keygen(rng);
  s.para_name = random_name(coordinator_prefix, "param", 16, rng);
  return s;
}

InterestPacket
build_request(RpcSession& s, const SigningIdentity& coordinator, uint64_t now_ms, crypto::RandomSource& rng,
              std::optional<Name> forwarding_hint)
{
  require_state(s, SessionState::Init, "build_request");
  InterestPacket i;
  i.name = s.signer_prefix;
  i.name.append("MPS").append("request").append(coordinator.identity()).append(ByteSpan(rng.bytes(8)));
  i.app_params = encode_request_params({s.para_name, s.dh.epk, std::move(forwarding_hint)});
  i.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{coordinator.key_name}, now_ms, rng.bytes<8>()};
  auto sig = crypto::bls_sign(coordinator.keys.sk, tbs_bytes(i));
  i.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
  s.request = i;
  s.state = SessionState::RequestSent;
  return i;
}

void
handle_ack(RpcSession& s, const DataPacket& ack, const schema::Certificate& signer_cert)
{
  require_state(s, SessionState::RequestSent, "handle_ack");
  if (ack.name != s.request.name)
    throw BadSignature("ack is not named after the request");
  if (ack.sig_info.key_locator.name != signer_cert.key_name || !bls_check_data(ack, signer_cert.pk))
    throw BadSignature("ack is not signed by " + signer_cert.key_name.to_uri());

  tlv::ElementSequence seq(ack.content, {type::DhPublicKey, type::EncryptedPayload});
  auto epk_value = seq.require(type::DhPublicKey).value;
  auto sealed = seq.require(type::EncryptedPayload).value;
  seq.finish();
  if (epk_value.size() != 32)
    throw DecodeError("DH public key must be 32 bytes");
  crypto::X25519Key signer_epk;
  std::copy(epk_value.begin(), epk_value.end(), signer_epk.begin());

  auto keys = crypto::derive_keys(s.dh.esk, signer_epk, *s.request.sig_info->nonce, transcript(s.request));
  auto plain = crypto::aead_open(keys.k_enc, crypto::make_nonce(RoleAck, 0), encode_name(ack.name), sealed);
  auto payload = decode_ack_payload(plain);

  s.keys = keys;
  s.status = payload.status;
  if (payload.status != StatusCode::Accepted) {
    s.state = SessionState::Failed;
    s.failure = payload.status == StatusCode::Busy ? "signer busy" : "signer rejected the coordinator";
    return;
  }
  s.eta_ms = payload.eta_ms;
  s.result_name = payload.result_name;
  s.state = SessionState::AckReceived;
}

DataPacket
serve_parameter(RpcSession& s, const DataPacket& unsigned_data)
{
  require_state(s, SessionState::AckReceived, "serve_parameter");
  DataPacket param;
  param.name = s.para_name;
  param.content = crypto::aead_seal(s.keys->k_enc, crypto::make_nonce(RoleParameter, 0), encode_name(s.para_name),
                                    encode_data(unsigned_data));
  hmac_sign(param, s.keys->k_mac);
  s.state = SessionState::ParamServed;
  return param;
}

InterestPacket
result_interest(const RpcSession& s)
{
  if (!s.result_name)
    throw StateError("session has no result name");
  InterestPacket i;
  i.name = *s.result_name;
  if (!s.signer_prefix.is_prefix_of(i.name))
    i.forwarding_hint = s.signer_prefix;
  return i;
}

crypto::BlsSignature
handle_result(RpcSession& s, const DataPacket& result, const schema::Certificate& signer_cert,
              const DataPacket& unsigned_data)
{
  require_state(s, SessionState::ParamServed, "handle_result");
  if (result.name != *s.result_name || !hmac_check(result, s.keys->k_mac))
    throw crypto::AuthFailure("result MAC does not verify");
  auto plain = crypto::aead_open(s.keys->k_enc, crypto::make_nonce(RoleResult, 0), encode_name(result.name),
                                 result.content);
  auto outcome = decode_result_outcome(plain);
  if (!outcome.piece)
    throw SignerDenied(signer_cert.key_name.to_uri() + " denied the request");
  if (!crypto::bls_verify(signer_cert.pk, tbs_bytes(unsigned_data), *outcome.piece))
    throw BadPiece("piece from " + signer_cert.key_name.to_uri() + " does not verify");
  s.piece = outcome.piece;
  s.state = SessionState::Done;
  return *outcome.piece;
}

void
fail(RpcSession& s, std::string why)
{
  if (s.state == SessionState::Done)
    throw StateError("cannot fail a completed session");
  s.state = SessionState::Failed;
  s.failure = std::move(why);
}

crypto::SessionKeys
signer_session_keys(const InterestPacket& request, const RequestParams& params, const crypto::DhEphemeral& signer_dh)
{
  if (!request.sig_info || !request.sig_info->nonce)
    throw DecodeError("request carries no nonce");
  return crypto::derive_keys(signer_dh.esk, params.dh_epk, *request.sig_info->nonce, transcript(request));
}

DataPacket
make_ack(const InterestPacket& request, const crypto::DhEphemeral& signer_dh, const crypto::SessionKeys& keys,
         const AckPayload& payload, const SigningIdentity& signer)
{
  DataPacket ack;
  ack.name = request.name;
  tlv::append_tlv(ack.content, type::DhPublicKey, signer_dh.epk);
  tlv::append_tlv(ack.content, type::EncryptedPayload,
                  crypto::aead_seal(keys.k_enc, crypto::make_nonce(RoleAck, 0), encode_name(ack.name),
                                    encode_ack_payload(payload)));
  bls_sign_data(ack, signer.key_name, signer.keys.sk);
  return ack;
}

DataPacket
open_parameter(const DataPacket& param, const crypto::SessionKeys& keys)
{
  if (!hmac_check(param, keys.k_mac))
    throw crypto::AuthFailure("parameter MAC does not verify");
  auto plain =
    crypto::aead_open(keys.k_enc, crypto::make_nonce(RoleParameter, 0), encode_name(param.name), param.content);
  return decode_data(plain);
}

DataPacket
make_result(const Name& result_name, const ResultOutcome& outcome, const crypto::SessionKeys& keys,
            uint64_t freshness_ms)
{
  DataPacket result;
  result.name = result_name;
  result.freshness_ms = freshness_ms;
  result.content = crypto::aead_seal(keys.k_enc, crypto::make_nonce(RoleResult, 0), encode_name(result_name),
                                     encode_result_outcome(outcome));
  hmac_sign(result, keys.k_mac);
  return result;
}

crypto::BlsSignature
sign_without_modification(const crypto::BlsSecretKey& sk, const DataPacket& unsigned_data)
{
  return crypto::bls_sign(sk, tbs_bytes(unsigned_data));
}

} // namespace mps::rpc
