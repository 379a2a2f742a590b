#pragma once

#include "mps/bytes.hpp"
#include "mps/crypto/random.hpp"

#include <array>
#include <mutex>
#include <vector>

namespace mps::net {

enum class NonceCheck { Accept, Stale, Replayed };

struct NonceCacheConfig
{
  uint64_t grace_window_ms = 60'000;
  size_t bits = size_t(1) << 20;
  unsigned hashes = 7;
};

/// Anti-replay state for signed requests.
///
/// A request is Stale if its timestamp is more than the grace window away
/// from the local clock, Replayed if its nonce is (probably) already recorded,
/// and otherwise accepted and recorded. Nonces live in Bloom filters, one per
/// window-length generation; the three most recent generations are consulted,
/// so a nonce is remembered for at least two windows -- long enough to cover
/// any timestamp that is not yet stale. There are no false negatives within
/// that span; false positives stay under 1% for 100k nonces per window with
/// the default sizing.
class NonceCache
{
public:
  explicit NonceCache(NonceCacheConfig config = {}, crypto::RandomSource& rng = crypto::system_random());

  /// Atomic check-and-insert; safe to call from several threads.
  NonceCheck check_and_record(uint64_t timestamp_ms, ByteSpan nonce, uint64_t now_ms);

  bool probably_contains(ByteSpan nonce) const;

  const NonceCacheConfig& config() const { return m_config; }

private:
  static constexpr size_t Generations = 3;

  std::vector<size_t> positions(ByteSpan nonce) const;
  void rotate(uint64_t now_ms);
  bool contains_locked(const std::vector<size_t>& pos) const;

  NonceCacheConfig m_config;
  std::array<uint8_t, 16> m_salt;
  mutable std::mutex m_mutex;
  std::array<std::vector<uint64_t>, Generations> m_filters; // [0] is the current generation
  uint64_t m_generation = 0;
};

} // namespace mps::net
