#pragma once

#include "mps/bytes.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace mps::crypto {

/// Source of the random bytes used for keys, nonces and random name components.
class RandomSource
{
public:
  virtual ~RandomSource() = default;

  virtual void fill(std::span<uint8_t> out) = 0;

  template<size_t N>
  std::array<uint8_t, N>
  bytes()
  {
    std::array<uint8_t, N> out;
    fill(out);
    return out;
  }

  Buffer
  bytes(size_t n)
  {
    Buffer out(n);
    fill(out);
    return out;
  }
};

/// Operating-system CSPRNG (libsodium randombytes).
class SystemRandom final : public RandomSource
{
public:
  void fill(std::span<uint8_t> out) override;
};

/// Reproducible ChaCha20 stream keyed by a seed; for simulations and tests.
class DeterministicRandom final : public RandomSource
{
public:
  explicit DeterministicRandom(uint64_t seed);

  void fill(std::span<uint8_t> out) override;

private:
  std::array<uint8_t, 32> m_seed;
  uint64_t m_counter = 0;
};

RandomSource& system_random();

} // namespace mps::crypto
