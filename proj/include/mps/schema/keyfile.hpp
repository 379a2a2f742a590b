#pragma once

#include "mps/crypto/bls.hpp"
#include "mps/crypto/random.hpp"

#include <filesystem>

namespace mps::schema {

/// A `*.blskey` file holds a 32-byte key-generation seed as 64 hex digits
/// (surrounding whitespace allowed). The key pair is bls_keygen(seed).
constexpr size_t KeySeedSize = 32;

/// Throws mps::Error if the file is missing or not exactly 32 bytes of hex.
crypto::BlsKeyPair load_key_file(const std::filesystem::path& path);

/// Writes a fresh random seed (file mode 0600) and returns the key pair.
/// Refuses to overwrite an existing file. Throws mps::Error.
crypto::BlsKeyPair create_key_file(const std::filesystem::path& path, crypto::RandomSource& rng);

} // namespace mps::schema
