#pragma once

#include "mps/crypto/hash.hpp"
#include "mps/packet.hpp"

#include <utility>

namespace mps {

using crypto::Digest;

/// Names and SHA-256 digests of the segments of a large object, committed by
/// a Merkle root. Only the manifest packet gets multiparty-signed.
struct Manifest
{
  std::vector<Name> segment_names;
  std::vector<Digest> segment_hashes;
  Digest merkle_root{};

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// SHA-256 over the full wire encoding of the segment.
Digest segment_digest(const DataPacket& segment);

/// Binary Merkle root: a single leaf is its own root; at every level an odd
/// trailing node is paired with itself. Throws EmptyInput.
Digest merkle_root(std::span<const Digest> leaves);

Buffer encode_manifest(const Manifest& manifest);
Manifest decode_manifest(ByteSpan content);

/// Returns the manifest and an unsigned Data packet (content type Manifest)
/// carrying it under `manifest_name`. Throws EmptyInput for no segments.
std::pair<Manifest, DataPacket> build_manifest(std::span<const DataPacket> segments, const Name& manifest_name);

bool verify_manifest(const Manifest& manifest, std::span<const DataPacket> segments);

} // namespace mps
