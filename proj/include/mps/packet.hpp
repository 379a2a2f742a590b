#pragma once

#include "mps/name.hpp"

#include <array>
#include <optional>

namespace mps {

enum class SignatureType : uint64_t {
  HmacSha256 = 4,
  Bls = 64,
};

/// Required SignatureValue length for a signed packet of this type.
constexpr size_t
signature_size(SignatureType type)
{
  return type == SignatureType::Bls ? 96 : 32;
}

enum class ContentType : uint64_t {
  Blob = 0,
  SigInfo = 1,
  Manifest = 2,
};

using InterestNonce = std::array<uint8_t, 8>;

struct KeyLocator
{
  Name name;

  friend bool operator==(const KeyLocator&, const KeyLocator&) = default;
};

struct SignatureInfo
{
  SignatureType type = SignatureType::Bls;
  KeyLocator key_locator;
  std::optional<uint64_t> timestamp; ///< milliseconds since the Unix epoch
  std::optional<InterestNonce> nonce;

  friend bool operator==(const SignatureInfo&, const SignatureInfo&) = default;
};

struct DataPacket
{
  Name name;
  ContentType content_type = ContentType::Blob;
  uint64_t freshness_ms = 0;
  Buffer content;
  SignatureInfo sig_info;
  /// Empty while unsigned; otherwise exactly signature_size(sig_info.type) bytes.
  Buffer sig_value;

  friend bool operator==(const DataPacket&, const DataPacket&) = default;
};

struct InterestPacket
{
  Name name;
  std::optional<Name> forwarding_hint;
  Buffer app_params;
  std::optional<SignatureInfo> sig_info;
  Buffer sig_value; ///< meaningful only when sig_info is set

  bool is_signed() const { return sig_info.has_value(); }

  friend bool operator==(const InterestPacket&, const InterestPacket&) = default;
};

Buffer encode_signature_info(const SignatureInfo& info);
SignatureInfo decode_signature_info(ByteSpan wire);

/// Throws mps::Error when the packet cannot be represented (empty name,
/// signature value of the wrong length).
Buffer encode_data(const DataPacket& data);
DataPacket decode_data(ByteSpan wire);

Buffer encode_interest(const InterestPacket& interest);
InterestPacket decode_interest(ByteSpan wire);

/// Bytes covered by a Data signature: the Name, ContentType, FreshnessPeriod,
/// Content and SignatureInfo elements exactly as they appear on the wire.
Buffer tbs_bytes(const DataPacket& data);

/// Bytes covered by a signed Interest: Name, ApplicationParameters (when
/// non-empty) and SignatureInfo. The forwarding hint is not covered.
Buffer tbs_bytes(const InterestPacket& interest);

} // namespace mps
