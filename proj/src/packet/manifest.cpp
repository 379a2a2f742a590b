#include "mps/manifest.hpp"
#include "mps/error.hpp"
#include "mps/tlv.hpp"

#include <algorithm>

namespace mps {

namespace {

namespace content_type {
inline constexpr uint64_t ManifestEntry = 0x60;
inline constexpr uint64_t SegmentDigest = 0x61;
inline constexpr uint64_t MerkleRoot = 0x62;
} // namespace content_type

Digest
to_digest(ByteSpan bytes)
{
  if (bytes.size() != Digest{}.size())
    throw DecodeError("digest must be 32 bytes");
  Digest d;
  std::copy(bytes.begin(), bytes.end(), d.begin());
  return d;
}

} // namespace

Digest
segment_digest(const DataPacket& segment)
{
  return crypto::sha256(encode_data(segment));
}

Digest
merkle_root(std::span<const Digest> leaves)
{
  if (leaves.empty())
    throw EmptyInput("Merkle tree needs at least one leaf");
  std::vector<Digest> level(leaves.begin(), leaves.end());
  while (level.size() > 1) {
    std::vector<Digest> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i < level.size(); i += 2) {
      const Digest& left = level[i];
      const Digest& right = i + 1 < level.size() ? level[i + 1] : level[i];
      next.push_back(crypto::sha256(left, right));
    }
    level = std::move(next);
  }
  return level.front();
}

Buffer
encode_manifest(const Manifest& manifest)
{
  if (manifest.segment_names.size() != manifest.segment_hashes.size())
    throw Error("manifest name and hash lists differ in length");
  Buffer out;
  tlv::append_tlv(out, content_type::MerkleRoot, manifest.merkle_root);
  for (size_t i = 0; i < manifest.segment_names.size(); ++i) {
    Buffer entry = encode_name(manifest.segment_names[i]);
    tlv::append_tlv(entry, content_type::SegmentDigest, manifest.segment_hashes[i]);
    tlv::append_tlv(out, content_type::ManifestEntry, entry);
  }
  return out;
}

Manifest
decode_manifest(ByteSpan content)
{
  tlv::Reader reader(content);
  Manifest manifest;
  if (reader.empty())
    throw DecodeError("empty manifest");
  tlv::Element root = reader.read();
  if (root.type != content_type::MerkleRoot)
    throw DecodeError("manifest must start with the Merkle root");
  manifest.merkle_root = to_digest(root.value);
  while (!reader.empty()) {
    tlv::Element entry = reader.read();
    if (entry.type != content_type::ManifestEntry)
      throw DecodeError("unexpected element in manifest");
    tlv::Reader fields(entry.value);
    tlv::Element name = fields.read();
    if (name.type != tlv::type::Name)
      throw DecodeError("manifest entry must start with a Name");
    tlv::Element digest = fields.read();
    if (digest.type != content_type::SegmentDigest || !fields.empty())
      throw DecodeError("malformed manifest entry");
    manifest.segment_names.push_back(decode_name_value(name.value));
    manifest.segment_hashes.push_back(to_digest(digest.value));
  }
  if (manifest.segment_names.empty())
    throw DecodeError("manifest lists no segments");
  return manifest;
}

std::pair<Manifest, DataPacket>
build_manifest(std::span<const DataPacket> segments, const Name& manifest_name)
{
  if (segments.empty())
    throw EmptyInput("manifest needs at least one segment");
  Manifest manifest;
  for (const auto& segment : segments) {
    manifest.segment_names.push_back(segment.name);
    manifest.segment_hashes.push_back(segment_digest(segment));
  }
  manifest.merkle_root = merkle_root(manifest.segment_hashes);

  DataPacket packet;
  packet.name = manifest_name;
  packet.content_type = ContentType::Manifest;
  packet.content = encode_manifest(manifest);
  return {std::move(manifest), std::move(packet)};
}

bool
verify_manifest(const Manifest& manifest, std::span<const DataPacket> segments)
{
  if (segments.empty() || manifest.segment_names.size() != segments.size() ||
      manifest.segment_hashes.size() != segments.size())
    return false;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].name != manifest.segment_names[i])
      return false;
    if (segment_digest(segments[i]) != manifest.segment_hashes[i])
      return false;
  }
  return merkle_root(manifest.segment_hashes) == manifest.merkle_root;
}

} // namespace mps
