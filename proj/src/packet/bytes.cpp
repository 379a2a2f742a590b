#include "mps/bytes.hpp"
#include "mps/error.hpp"

#include <algorithm>

namespace mps {

std::string
to_hex(ByteSpan bytes)
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

namespace {

int
hex_value(char c)
{
  if (c >= '0' && c <= '9')
    return c - '0';
  if (c >= 'a' && c <= 'f')
    return c - 'a' + 10;
  if (c >= 'A' && c <= 'F')
    return c - 'A' + 10;
  return -1;
}

} // namespace

Buffer
from_hex(std::string_view hex)
{
  if (hex.starts_with("0x") || hex.starts_with("0X"))
    hex.remove_prefix(2);
  if (hex.size() % 2 != 0)
    throw Error("hex string has odd length");
  Buffer out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw Error("invalid hex character");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

bool
contains_subsequence(ByteSpan haystack, ByteSpan needle)
{
  if (needle.empty())
    return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

} // namespace mps
