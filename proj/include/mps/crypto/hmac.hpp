#pragma once

#include "mps/bytes.hpp"

#include <array>

namespace mps::crypto {

using HmacTag = std::array<uint8_t, 32>;

HmacTag hmac_tag(ByteSpan key, ByteSpan message);

/// Constant-time comparison against a freshly computed HMAC-SHA256.
bool hmac_verify(ByteSpan key, ByteSpan message, ByteSpan tag);

} // namespace mps::crypto
