#include "mps/crypto/aead.hpp"
#include "mps/crypto/hash.hpp"
#include "mps/crypto/hmac.hpp"
#include "mps/crypto/kex.hpp"
#include "mps/crypto/random.hpp"

#include <sodium.h>

#include <stdexcept>

namespace mps::crypto {

namespace {

struct SodiumInit
{
  SodiumInit()
  {
    if (sodium_init() < 0)
      throw std::runtime_error("libsodium initialization failed");
  }
};

void
ensure_sodium()
{
  static SodiumInit init;
}

} // namespace

Digest
sha256(ByteSpan input)
{
  Digest out;
  crypto_hash_sha256(out.data(), input.data(), input.size());
  return out;
}

Digest
sha256(ByteSpan first, ByteSpan second)
{
  crypto_hash_sha256_state state;
  crypto_hash_sha256_init(&state);
  crypto_hash_sha256_update(&state, first.data(), first.size());
  crypto_hash_sha256_update(&state, second.data(), second.size());
  Digest out;
  crypto_hash_sha256_final(&state, out.data());
  return out;
}

void
SystemRandom::fill(std::span<uint8_t> out)
{
  ensure_sodium();
  randombytes_buf(out.data(), out.size());
}

RandomSource&
system_random()
{
  static SystemRandom rng;
  return rng;
}

DeterministicRandom::DeterministicRandom(uint64_t seed)
{
  uint8_t encoded[8];
  for (int i = 0; i < 8; ++i)
    encoded[i] = static_cast<uint8_t>(seed >> (56 - 8 * i));
  m_seed = sha256(as_bytes("mps deterministic random"), encoded);
}

void
DeterministicRandom::fill(std::span<uint8_t> out)
{
  uint8_t counter[8];
  for (int i = 0; i < 8; ++i)
    counter[i] = static_cast<uint8_t>(m_counter >> (56 - 8 * i));
  ++m_counter;
  Digest block_seed = sha256(m_seed, counter);
  randombytes_buf_deterministic(out.data(), out.size(), block_seed.data());
}

HmacTag
hmac_tag(ByteSpan key, ByteSpan message)
{
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state, message.data(), message.size());
  HmacTag tag;
  crypto_auth_hmacsha256_final(&state, tag.data());
  sodium_memzero(&state, sizeof(state));
  return tag;
}

bool
hmac_verify(ByteSpan key, ByteSpan message, ByteSpan tag)
{
  if (tag.size() != HmacTag{}.size())
    return false;
  HmacTag expected = hmac_tag(key, message);
  return sodium_memcmp(expected.data(), tag.data(), expected.size()) == 0;
}

Buffer
hkdf_extract(ByteSpan salt, ByteSpan ikm)
{
  HmacTag prk = hmac_tag(salt, ikm);
  return Buffer(prk.begin(), prk.end());
}

Buffer
hkdf_expand(ByteSpan prk, ByteSpan info, size_t length)
{
  if (length > 255 * 32)
    throw Error("HKDF output too long");
  Buffer out;
  Buffer block;
  for (uint8_t counter = 1; out.size() < length; ++counter) {
    Buffer input = block;
    append(input, info);
    input.push_back(counter);
    HmacTag t = hmac_tag(prk, input);
    block.assign(t.begin(), t.end());
    append(out, block);
  }
  out.resize(length);
  return out;
}

Buffer
hkdf_sha256(ByteSpan salt, ByteSpan ikm, ByteSpan info, size_t length)
{
  return hkdf_expand(hkdf_extract(salt, ikm), info, length);
}

DhEphemeral
dh_from_secret(const X25519Key& esk)
{
  ensure_sodium();
  DhEphemeral dh;
  dh.esk = esk;
  crypto_scalarmult_base(dh.epk.data(), dh.esk.data());
  return dh;
}

DhEphemeral
dh_keygen(RandomSource& rng)
{
  return dh_from_secret(rng.bytes<32>());
}

X25519Key
x25519(const X25519Key& secret, const X25519Key& peer_public)
{
  ensure_sodium();
  X25519Key shared;
  if (crypto_scalarmult(shared.data(), secret.data(), peer_public.data()) != 0)
    throw LowOrderPoint("X25519 produced the all-zero shared secret");
  return shared;
}

SessionKeys
derive_keys(const X25519Key& esk, const X25519Key& peer_epk, ByteSpan salt, ByteSpan transcript)
{
  X25519Key shared = x25519(esk, peer_epk);
  Buffer prk = hkdf_extract(salt, shared);
  sodium_memzero(shared.data(), shared.size());
  Digest transcript_hash = sha256(transcript);

  auto expand = [&](std::string_view label) {
    Buffer info(label.begin(), label.end());
    append(info, transcript_hash);
    Buffer okm = hkdf_expand(prk, info, 32);
    SymmetricKey key;
    std::copy(okm.begin(), okm.end(), key.begin());
    return key;
  };

  SessionKeys keys{expand("MPS/kmac"), expand("MPS/kenc")};
  sodium_memzero(prk.data(), prk.size());
  return keys;
}

AeadNonce
make_nonce(std::string_view role, uint64_t counter)
{
  if (role.size() > 4)
    throw Error("AEAD nonce role tag longer than 4 bytes");
  AeadNonce nonce{};
  std::copy(role.begin(), role.end(), nonce.begin());
  for (int i = 0; i < 8; ++i)
    nonce[4 + i] = static_cast<uint8_t>(counter >> (56 - 8 * i));
  return nonce;
}

Buffer
aead_seal(ByteSpan key, const AeadNonce& nonce, ByteSpan aad, ByteSpan plaintext)
{
  if (key.size() != crypto_aead_chacha20poly1305_ietf_KEYBYTES)
    throw Error("AEAD key must be 32 bytes");
  Buffer out(plaintext.size() + AeadTagSize);
  unsigned long long out_len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data(), &out_len, plaintext.data(), plaintext.size(),
                                            aad.data(), aad.size(), nullptr, nonce.data(), key.data());
  out.resize(out_len);
  return out;
}

Buffer
aead_open(ByteSpan key, const AeadNonce& nonce, ByteSpan aad, ByteSpan ciphertext)
{
  if (key.size() != crypto_aead_chacha20poly1305_ietf_KEYBYTES)
    throw Error("AEAD key must be 32 bytes");
  if (ciphertext.size() < AeadTagSize)
    throw AuthFailure("ciphertext shorter than the authentication tag");
  Buffer out(ciphertext.size() - AeadTagSize);
  unsigned long long out_len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &out_len, nullptr, ciphertext.data(),
                                                ciphertext.size(), aad.data(), aad.size(), nonce.data(),
                                                key.data()) != 0)
    throw AuthFailure("AEAD authentication failed");
  out.resize(out_len);
  return out;
}

} // namespace mps::crypto
