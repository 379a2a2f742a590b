#pragma once

#include "mps/crypto/bls.hpp"
#include "mps/crypto/kex.hpp"
#include "mps/crypto/random.hpp"
#include "mps/packet.hpp"

#include <optional>
#include <vector>

/// Payload formats of the signature-collection protocol.
///
///   request ApplicationParameters = ParaName DhPublicKey [ForwardingHint]
///   ack Content                   = DhPublicKey EncryptedPayload
///     ack plaintext               = Status [EtaMs ResultName]
///   parameter Content             = AEAD(encode(unsigned Data))
///   result Content                = AEAD(SignaturePiece | Denied)
///   SigInfo Content               = Name* [AggregatePublicKey]
namespace mps::rpc {

namespace type {
inline constexpr uint64_t ParaName = 0x50;
inline constexpr uint64_t DhPublicKey = 0x51;
inline constexpr uint64_t ForwardingHint = 0x52;
inline constexpr uint64_t EncryptedPayload = 0x53;
inline constexpr uint64_t Status = 0x54;
inline constexpr uint64_t EtaMs = 0x55;
inline constexpr uint64_t ResultName = 0x56;
inline constexpr uint64_t SignaturePiece = 0x57;
inline constexpr uint64_t Denied = 0x58;
inline constexpr uint64_t AggregatePublicKey = 0x76;
} // namespace type

enum class StatusCode : uint64_t {
  Accepted = 0,
  RejectedIdentity = 1,
  Busy = 2,
};

/// An ack carried a status code outside the frozen table.
class UnknownStatus : public Error
{
public:
  explicit UnknownStatus(uint64_t code)
    : Error("unknown status code " + std::to_string(code))
  {}
};

/// AEAD nonce roles; each (key, role) pair is used for exactly one message.
inline constexpr std::string_view RoleAck = "ack";
inline constexpr std::string_view RoleParameter = "par";
inline constexpr std::string_view RoleResult = "res";

struct RequestParams
{
  Name para_name;
  crypto::X25519Key dh_epk{};
  std::optional<Name> forwarding_hint;

  friend bool operator==(const RequestParams&, const RequestParams&) = default;
};

Buffer encode_request_params(const RequestParams& p);
RequestParams decode_request_params(ByteSpan wire);

struct AckPayload
{
  StatusCode status = StatusCode::Accepted;
  std::optional<uint64_t> eta_ms;
  std::optional<Name> result_name;

  friend bool operator==(const AckPayload&, const AckPayload&) = default;
};

Buffer encode_ack_payload(const AckPayload& p);
/// Throws UnknownStatus or DecodeError; an Accepted ack must carry both ETA and result name.
AckPayload decode_ack_payload(ByteSpan wire);

/// The signer's answer: a signature piece, or a refusal.
struct ResultOutcome
{
  std::optional<crypto::BlsSignature> piece; ///< empty means Denied
};

Buffer encode_result_outcome(const ResultOutcome& o);
ResultOutcome decode_result_outcome(ByteSpan wire);

struct SigInfoContent
{
  std::vector<Name> signers;
  std::optional<crypto::BlsPublicKey> aggregate_pk; ///< advisory only

  friend bool operator==(const SigInfoContent&, const SigInfoContent&) = default;
};

Buffer encode_siginfo_content(const SigInfoContent& c);
/// Throws DecodeError, including on a repeated signer name.
SigInfoContent decode_siginfo_content(ByteSpan wire);

/// `<prefix>/MPS/<kind>/<n random bytes>`
Name random_name(const Name& prefix, std::string_view kind, size_t n, crypto::RandomSource& rng);

/// Late-binding key locator: `<coordinator prefix>/MPS/siginfo/<16 random bytes>`.
Name make_placeholder(const Name& coordinator_prefix, crypto::RandomSource& rng);

/// Key locator of HMAC-signed packets: `/MPS/kmac/<8 bytes of SHA-256(k_mac)>`.
Name hmac_key_name(const crypto::SymmetricKey& k_mac);

/// HMAC-SHA256 signature over the Data's signed portion; sets sig_info and sig_value.
void hmac_sign(DataPacket& data, const crypto::SymmetricKey& k_mac);
bool hmac_check(const DataPacket& data, const crypto::SymmetricKey& k_mac);

/// BLS signature over the Data's signed portion with the given key locator.
void bls_sign_data(DataPacket& data, const Name& key_name, const crypto::BlsSecretKey& sk);
bool bls_check_data(const DataPacket& data, const crypto::BlsPublicKey& pk);

} // namespace mps::rpc
