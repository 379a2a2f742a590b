#pragma once

#include "mps/bytes.hpp"
#include "mps/error.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string_view>

/// BLS multisignatures over BLS12-381, minimal-pubkey-size variant: public
/// keys are compressed G1 points (48 bytes), signatures compressed G2 points
/// (96 bytes). Hashing follows the proof-of-possession ciphersuite used by
/// Ethereum consensus clients.
namespace mps::crypto {

inline constexpr size_t BlsSecretKeySize = 32;
inline constexpr size_t BlsPublicKeySize = 48;
inline constexpr size_t BlsSignatureSize = 96;

inline constexpr std::string_view BlsSignatureDst = "BLS_SIG_BLS12381G2_XMD:SHA-256_SSWU_RO_POP_";
inline constexpr std::string_view BlsPopDst = "BLS_POP_BLS12381G2_XMD:SHA-256_SSWU_RO_POP_";

class WeakSeed : public Error
{
public:
  using Error::Error;
};

/// Bytes that do not decode to a valid point of the expected subgroup.
class MalformedPoint : public Error
{
public:
  using Error::Error;
};

class BlsSecretKey
{
public:
  /// 32-byte big-endian scalar in [1, r). Throws mps::Error otherwise.
  static BlsSecretKey from_bytes(ByteSpan bytes);

  BlsSecretKey(const BlsSecretKey&) = default;
  BlsSecretKey& operator=(const BlsSecretKey&) = default;
  ~BlsSecretKey();

  std::array<uint8_t, BlsSecretKeySize> to_bytes() const { return m_scalar; }

private:
  BlsSecretKey() = default;
  friend class BlsAccess;

  std::array<uint8_t, BlsSecretKeySize> m_scalar{}; // big-endian
};

/// Public key: a validated, non-identity point of G1.
class BlsPublicKey
{
public:
  /// Throws MalformedPoint unless `bytes` is a compressed G1 point in the
  /// prime-order subgroup other than the identity.
  static BlsPublicKey from_bytes(ByteSpan bytes);

  const std::array<uint8_t, BlsPublicKeySize>& bytes() const { return m_compressed; }

  friend bool operator==(const BlsPublicKey& a, const BlsPublicKey& b) { return a.m_compressed == b.m_compressed; }
  friend auto operator<=>(const BlsPublicKey& a, const BlsPublicKey& b) { return a.m_compressed <=> b.m_compressed; }

private:
  BlsPublicKey() = default;
  friend class BlsAccess;

  std::array<uint8_t, BlsPublicKeySize> m_compressed{};
  alignas(8) std::array<std::byte, 96> m_affine{};
};

/// Signature: a validated point of the G2 subgroup (the identity decodes but never verifies).
class BlsSignature
{
public:
  static BlsSignature from_bytes(ByteSpan bytes);

  const std::array<uint8_t, BlsSignatureSize>& bytes() const { return m_compressed; }

  friend bool operator==(const BlsSignature& a, const BlsSignature& b) { return a.m_compressed == b.m_compressed; }

private:
  BlsSignature() = default;
  friend class BlsAccess;

  std::array<uint8_t, BlsSignatureSize> m_compressed{};
  alignas(8) std::array<std::byte, 192> m_affine{};
};

struct ProofOfPossession
{
  BlsSignature proof;

  friend bool operator==(const ProofOfPossession&, const ProofOfPossession&) = default;
};

struct BlsKeyPair
{
  BlsSecretKey sk;
  BlsPublicKey pk;
  ProofOfPossession pop;
};

/// Deterministic key generation from input keying material (HKDF-mod-r
/// KeyGen, empty key_info). Throws WeakSeed for seeds shorter than 32 bytes.
BlsKeyPair bls_keygen(ByteSpan seed);

BlsPublicKey bls_public_key(const BlsSecretKey& sk);

BlsSignature bls_sign(const BlsSecretKey& sk, ByteSpan message);
bool bls_verify(const BlsPublicKey& pk, ByteSpan message, const BlsSignature& sig);

/// Throws EmptyInput for an empty list.
BlsSignature bls_aggregate_sigs(std::span<const BlsSignature> sigs);

/// Throws EmptyInput for an empty list, MalformedPoint if the sum is the identity.
BlsPublicKey bls_aggregate_pks(std::span<const BlsPublicKey> pks);

/// Verification of one message signed by every key in `pks`.
bool bls_fast_aggregate_verify(std::span<const BlsPublicKey> pks, ByteSpan message, const BlsSignature& sig);

ProofOfPossession pop_prove(const BlsSecretKey& sk);
bool pop_verify(const BlsPublicKey& pk, const ProofOfPossession& pop);

} // namespace mps::crypto
