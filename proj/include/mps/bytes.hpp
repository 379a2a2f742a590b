#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mps {

using Buffer = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;

std::string to_hex(ByteSpan bytes);

/// Throws mps::Error on odd length or non-hex characters.
Buffer from_hex(std::string_view hex);

inline ByteSpan as_bytes(std::string_view s)
{
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline void append(Buffer& out, ByteSpan bytes)
{
  out.insert(out.end(), bytes.begin(), bytes.end());
}

/// True if needle occurs as a contiguous run inside haystack.
bool contains_subsequence(ByteSpan haystack, ByteSpan needle);

} // namespace mps
