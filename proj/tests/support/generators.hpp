#pragma once

#include "mps/packet.hpp"

#include <random>

namespace mps::testing {

/// Hand-rolled generators for property-style tests.
class Gen
{
public:
  explicit Gen(uint64_t seed)
    : m_rng(seed)
  {}

  uint64_t u64() { return m_rng(); }
  size_t below(size_t n) { return static_cast<size_t>(m_rng() % n); }
  bool coin() { return (m_rng() & 1) != 0; }

  Buffer
  bytes(size_t n)
  {
    Buffer out(n);
    for (auto& b : out)
      b = static_cast<uint8_t>(m_rng());
    return out;
  }

  Name
  name(size_t min_len = 1, size_t max_len = 6)
  {
    Name n;
    size_t len = min_len + below(max_len - min_len + 1);
    for (size_t i = 0; i < len; ++i)
      n.append(ByteSpan(bytes(1 + below(coin() ? 8 : 255))));
    return n;
  }

  SignatureInfo
  sig_info(bool with_freshness_fields)
  {
    SignatureInfo info;
    info.type = coin() ? SignatureType::Bls : SignatureType::HmacSha256;
    info.key_locator.name = name();
    if (with_freshness_fields || coin()) {
      info.timestamp = u64() >> below(64);
      InterestNonce nonce;
      auto b = bytes(8);
      std::copy(b.begin(), b.end(), nonce.begin());
      info.nonce = nonce;
    }
    return info;
  }

  DataPacket
  data()
  {
    DataPacket d;
    d.name = name();
    d.content_type = static_cast<ContentType>(below(3));
    d.freshness_ms = coin() ? 0 : u64() >> below(64);
    d.content = bytes(below(coin() ? 16 : 600));
    d.sig_info = sig_info(false);
    if (coin())
      d.sig_value = bytes(signature_size(d.sig_info.type));
    return d;
  }

  InterestPacket
  interest()
  {
    InterestPacket i;
    i.name = name();
    if (coin())
      i.forwarding_hint = name();
    i.app_params = bytes(below(100));
    if (coin()) {
      i.sig_info = sig_info(true);
      i.sig_value = bytes(signature_size(i.sig_info->type));
    }
    return i;
  }

private:
  std::mt19937_64 m_rng;
};

} // namespace mps::testing
