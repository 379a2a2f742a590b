#pragma once

#include "mps/rpc/messages.hpp"
#include "mps/schema/certificate.hpp"

#include <string>

/// Protocol steps of one signature-collection exchange, free of any transport.
///
/// Coordinator                                    Signer
///   request Interest (BLS, timestamp, nonce) --->
///   <--- ack Data (BLS): signer DH key + AEAD{status, ETA, result name}
///                                      <--- parameter Interest
///   parameter Data (HMAC): AEAD{unsigned packet} --->
///   result Interest (after ETA)              --->
///   <--- result Data (HMAC): AEAD{piece | Denied}
///
/// Both sides derive K_mac/K_enc from X25519 with salt = request nonce and
/// transcript = signed portion of the request || encoded ack name.
namespace mps::rpc {

/// The key a party signs with, named `/<identity>/KEY/<id>`.
struct SigningIdentity
{
  Name key_name;
  crypto::BlsKeyPair keys;

  Name identity() const { return key_name.prefix(-2); }
};

enum class SessionState { Init, RequestSent, AckReceived, ParamServed, Done, Failed };

std::string_view to_string(SessionState s);

/// A protocol step was attempted in a state that does not allow it.
class StateError : public Error
{
public:
  using Error::Error;
};

class BadSignature : public Error
{
public:
  using Error::Error;
};

/// The signer returned a piece that does not verify over the unsigned packet.
class BadPiece : public Error
{
public:
  using Error::Error;
};

/// The signer refused to sign (policy or application decision).
class SignerDenied : public Error
{
public:
  using Error::Error;
};

/// Coordinator-side state of one exchange with one signer.
struct RpcSession
{
  Name signer_prefix;
  Name signer_key;
  SessionState state = SessionState::Init;
  crypto::DhEphemeral dh;
  std::optional<crypto::SessionKeys> keys;
  Name para_name;
  std::optional<Name> result_name;
  std::optional<uint64_t> eta_ms;
  std::optional<StatusCode> status;
  std::optional<crypto::BlsSignature> piece;
  InterestPacket request;
  uint32_t rtts = 0; ///< coordinator-expressed Interests in this session
  std::string failure;
};

/// Fresh session towards `signer`: new DH ephemeral, random ParaName under
/// `<coordinator prefix>/MPS/param`.
RpcSession open_session(const schema::Certificate& signer, const Name& coordinator_prefix, crypto::RandomSource& rng);

/// Init -> RequestSent. Name: `<signer prefix>/MPS/request/<coordinator identity>/<8 random bytes>`.
InterestPacket build_request(RpcSession& s, const SigningIdentity& coordinator, uint64_t now_ms,
                             crypto::RandomSource& rng, std::optional<Name> forwarding_hint = std::nullopt);

/// RequestSent -> AckReceived, or Failed when the signer declined. Throws
/// BadSignature, crypto::AuthFailure, UnknownStatus or DecodeError.
void handle_ack(RpcSession& s, const DataPacket& ack, const schema::Certificate& signer_cert);

/// AckReceived -> ParamServed. The parameter Data for the signer to fetch.
DataPacket serve_parameter(RpcSession& s, const DataPacket& unsigned_data);

/// Interest for the result; carries the signer prefix as forwarding hint when
/// the result name lies outside it.
InterestPacket result_interest(const RpcSession& s);

/// ParamServed -> Done. Throws crypto::AuthFailure (bad MAC or ciphertext),
/// SignerDenied, or BadPiece.
crypto::BlsSignature handle_result(RpcSession& s, const DataPacket& result, const schema::Certificate& signer_cert,
                                   const DataPacket& unsigned_data);

/// Any state except Done -> Failed.
void fail(RpcSession& s, std::string why);

/// Coordinator-initiated Interest/Data exchanges so far.
inline uint32_t rtt_count(const RpcSession& s) { return s.rtts; }

// ---- signer side ----

/// Keys for answering `request`, from the signer's ephemeral and the coordinator's DH key.
crypto::SessionKeys signer_session_keys(const InterestPacket& request, const RequestParams& params,
                                        const crypto::DhEphemeral& signer_dh);

/// The BLS-signed ack named after the request.
DataPacket make_ack(const InterestPacket& request, const crypto::DhEphemeral& signer_dh,
                    const crypto::SessionKeys& keys, const AckPayload& payload, const SigningIdentity& signer);

/// Checks the HMAC and decrypts a parameter Data. Throws crypto::AuthFailure or DecodeError.
DataPacket open_parameter(const DataPacket& param, const crypto::SessionKeys& keys);

/// The HMAC-signed, encrypted result Data.
DataPacket make_result(const Name& result_name, const ResultOutcome& outcome, const crypto::SessionKeys& keys,
                       uint64_t freshness_ms);

/// A piece over the packet's signed portion exactly as received; the packet
/// is taken by const reference and never altered.
crypto::BlsSignature sign_without_modification(const crypto::BlsSecretKey& sk, const DataPacket& unsigned_data);

} // namespace mps::rpc
