#include "mps/net/nonce_cache.hpp"
#include "mps/crypto/hash.hpp"
#include "mps/error.hpp"

#include <algorithm>
#include <cstring>

namespace mps::net {

NonceCache::NonceCache(NonceCacheConfig config, crypto::RandomSource& rng)
  : m_config(config)
  , m_salt(rng.bytes<16>())
{
  if (m_config.bits < 64 || m_config.hashes == 0 || m_config.grace_window_ms == 0)
    throw Error("invalid nonce cache configuration");
  for (auto& f : m_filters)
    f.assign((m_config.bits + 63) / 64, 0);
}

std::vector<size_t>
NonceCache::positions(ByteSpan nonce) const
{
  // Double hashing (Kirsch-Mitzenmacher) from one keyed SHA-256.
  auto digest = crypto::sha256(m_salt, nonce);
  uint64_t h1, h2;
  std::memcpy(&h1, digest.data(), 8);
  std::memcpy(&h2, digest.data() + 8, 8);
  h2 |= 1;
  std::vector<size_t> out(m_config.hashes);
  for (unsigned i = 0; i < m_config.hashes; ++i)
    out[i] = static_cast<size_t>((h1 + i * h2) % m_config.bits);
  return out;
}

void
NonceCache::rotate(uint64_t now_ms)
{
  uint64_t generation = now_ms / m_config.grace_window_ms;
  if (generation <= m_generation)
    return;
  uint64_t shift = std::min<uint64_t>(generation - m_generation, Generations);
  for (uint64_t s = 0; s < shift; ++s) {
    std::rotate(m_filters.rbegin(), m_filters.rbegin() + 1, m_filters.rend());
    std::fill(m_filters[0].begin(), m_filters[0].end(), 0);
  }
  m_generation = generation;
}

bool
NonceCache::contains_locked(const std::vector<size_t>& pos) const
{
  return std::any_of(m_filters.begin(), m_filters.end(), [&](const std::vector<uint64_t>& f) {
    return std::all_of(pos.begin(), pos.end(), [&](size_t p) { return (f[p / 64] >> (p % 64)) & 1; });
  });
}

NonceCheck
NonceCache::check_and_record(uint64_t timestamp_ms, ByteSpan nonce, uint64_t now_ms)
{
  uint64_t skew = timestamp_ms > now_ms ? timestamp_ms - now_ms : now_ms - timestamp_ms;
  if (skew > m_config.grace_window_ms)
    return NonceCheck::Stale;
  auto pos = positions(nonce);
  std::lock_guard lock(m_mutex);
  rotate(now_ms);
  if (contains_locked(pos))
    return NonceCheck::Replayed;
  for (size_t p : pos)
    m_filters[0][p / 64] |= uint64_t(1) << (p % 64);
  return NonceCheck::Accept;
}

bool
NonceCache::probably_contains(ByteSpan nonce) const
{
  auto pos = positions(nonce);
  std::lock_guard lock(m_mutex);
  return contains_locked(pos);
}

} // namespace mps::net
