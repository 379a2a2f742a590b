#include "mps/crypto/hash.hpp"
#include "mps/error.hpp"
#include "mps/manifest.hpp"

#include "doctest.h"
#include "json.hpp"

#include <fstream>

using namespace mps;

namespace {

std::vector<DataPacket>
make_segments(size_t n)
{
  std::vector<DataPacket> out;
  for (size_t i = 0; i < n; ++i) {
    DataPacket seg;
    seg.name = Name("/Mfr/firmware/v2");
    seg.name.append("seg" + std::to_string(i));
    seg.content = Buffer(100 + i, static_cast<uint8_t>(i));
    seg.sig_info.key_locator.name = Name("/Mfr/KEY/1");
    out.push_back(seg);
  }
  return out;
}

Digest
leaf(uint8_t i)
{
  return crypto::sha256(ByteSpan(&i, 1));
}

} // namespace

TEST_SUITE("manifest")
{

TEST_CASE("single leaf root is the leaf")
{
  auto segs = make_segments(1);
  auto [manifest, packet] = build_manifest(segs, Name("/Mfr/firmware/v2/manifest"));
  CHECK(manifest.merkle_root == segment_digest(segs[0]));
  CHECK(packet.content_type == ContentType::Manifest);
  CHECK(packet.sig_value.empty());
}

TEST_CASE("two leaves hash as one node")
{
  auto segs = make_segments(2);
  auto [manifest, packet] = build_manifest(segs, Name("/m"));
  CHECK(manifest.merkle_root == crypto::sha256(segment_digest(segs[0]), segment_digest(segs[1])));
}

TEST_CASE("three leaves duplicate the odd node")
{
  auto segs = make_segments(3);
  auto [manifest, packet] = build_manifest(segs, Name("/m"));
  Digest h1 = segment_digest(segs[0]), h2 = segment_digest(segs[1]), h3 = segment_digest(segs[2]);
  CHECK(manifest.merkle_root == crypto::sha256(crypto::sha256(h1, h2), crypto::sha256(h3, h3)));
}

TEST_CASE("roots match the frozen oracle for 1..8 leaves")
{
  std::ifstream in(MPS_TEST_DATA_DIR "/merkle_roots.json");
  REQUIRE(in);
  auto cases = nlohmann::json::parse(in);
  REQUIRE(cases.size() == 8);
  for (const auto& c : cases) {
    std::vector<Digest> leaves;
    for (int i = 0; i < c["leaves"].get<int>(); ++i)
      leaves.push_back(leaf(static_cast<uint8_t>(i)));
    CHECK(to_hex(merkle_root(leaves)) == c["root"].get<std::string>());
  }
}

TEST_CASE("empty input")
{
  CHECK_THROWS_AS(build_manifest({}, Name("/m")), EmptyInput);
  CHECK_THROWS_AS(merkle_root({}), EmptyInput);
}

TEST_CASE("verify_manifest")
{
  auto segs = make_segments(5);
  auto [manifest, packet] = build_manifest(segs, Name("/m"));
  CHECK(verify_manifest(manifest, segs));
  CHECK(decode_manifest(packet.content) == manifest);

  for (size_t i = 0; i < segs.size(); ++i) {
    auto tampered = segs;
    tampered[i].content[0] ^= 0x80;
    CHECK_FALSE(verify_manifest(manifest, tampered));
  }

  auto reordered = segs;
  std::swap(reordered[1], reordered[3]);
  CHECK_FALSE(verify_manifest(manifest, reordered));

  // Same segment set in a different order commits to a different root.
  auto [other, other_packet] = build_manifest(reordered, Name("/m"));
  CHECK(other.merkle_root != manifest.merkle_root);

  auto shorter = segs;
  shorter.pop_back();
  CHECK_FALSE(verify_manifest(manifest, shorter));

  Manifest bad_root = manifest;
  bad_root.merkle_root[0] ^= 1;
  CHECK_FALSE(verify_manifest(bad_root, segs));
}

} // TEST_SUITE
