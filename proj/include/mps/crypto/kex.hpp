#pragma once

#include "mps/bytes.hpp"
#include "mps/crypto/random.hpp"
#include "mps/error.hpp"

#include <array>

namespace mps::crypto {

using X25519Key = std::array<uint8_t, 32>;
using SymmetricKey = std::array<uint8_t, 32>;

/// The DH exchange produced the all-zero shared secret.
class LowOrderPoint : public Error
{
public:
  using Error::Error;
};

struct DhEphemeral
{
  X25519Key esk{};
  X25519Key epk{};
};

struct SessionKeys
{
  SymmetricKey k_mac{};
  SymmetricKey k_enc{};
};

DhEphemeral dh_keygen(RandomSource& rng);
DhEphemeral dh_from_secret(const X25519Key& esk);

X25519Key x25519(const X25519Key& secret, const X25519Key& peer_public);

Buffer hkdf_extract(ByteSpan salt, ByteSpan ikm);
Buffer hkdf_expand(ByteSpan prk, ByteSpan info, size_t length);
Buffer hkdf_sha256(ByteSpan salt, ByteSpan ikm, ByteSpan info, size_t length);

/// HKDF-SHA256 over the X25519 shared secret. Info strings are
/// "MPS/kmac" || SHA-256(transcript) and "MPS/kenc" || SHA-256(transcript).
SessionKeys derive_keys(const X25519Key& esk, const X25519Key& peer_epk, ByteSpan salt, ByteSpan transcript);

} // namespace mps::crypto
