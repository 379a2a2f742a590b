#pragma once

#include "mps/bytes.hpp"

#include <array>

namespace mps::crypto {

using Digest = std::array<uint8_t, 32>;

Digest sha256(ByteSpan input);

/// SHA-256 of the concatenation of two byte strings.
Digest sha256(ByteSpan first, ByteSpan second);

} // namespace mps::crypto
