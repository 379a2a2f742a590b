#include "mps/crypto/bls.hpp"

#include "doctest.h"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <random>

using namespace mps;
using namespace mps::crypto;

namespace {

nlohmann::json
vectors()
{
  static nlohmann::json v = [] {
    std::ifstream in(MPS_TEST_DATA_DIR "/bls_vectors.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
  }();
  return v;
}

BlsKeyPair
keypair(uint8_t tag)
{
  Buffer seed(32, tag);
  seed[0] = 0x42;
  return bls_keygen(seed);
}

/// Consensus-spec semantics: any decoding failure means "false".
bool
verify_hex(const std::string& pk, const std::string& msg, const std::string& sig)
{
  try {
    return bls_verify(BlsPublicKey::from_bytes(from_hex(pk)), from_hex(msg), BlsSignature::from_bytes(from_hex(sig)));
  }
  catch (const MalformedPoint&) {
    return false;
  }
}

} // namespace

TEST_SUITE("bls")
{

TEST_CASE("published vectors")
{
  // EIP-2333 test case 0 master secret key.
  auto kp = bls_keygen(from_hex("c55257c360c07c72029aebc1b53c05ed0362ada38ead3e3e9efa3708e53495531f09a6987599d18264c1e1c92f2cf141630c7a3c4ab7c81b2f001698e7463b04"));
  CHECK(to_hex(kp.sk.to_bytes()) == "0d7359d57963ab8fbbde1852dcf553fedbc31f464d80ee7d40ae683122b45070");

  // Consensus-spec sign case: privkey 0x263d..., message 32 zero bytes.
  auto sk = BlsSecretKey::from_bytes(from_hex("263dbd792f5b1be47ed85f8938c0f29586af0d3ac7b977f21c278fe1462040e3"));
  CHECK(to_hex(bls_public_key(sk).bytes()) ==
        "a491d1b0ecd9bb917989f0e74f0dea0422eac4a873e5e2644f368dffb9a6e20fd6e10c1b77654d067c0618f6e5a7f79a");
  CHECK(to_hex(bls_sign(sk, Buffer(32, 0)).bytes()) ==
        "b6ed936746e01f8ecf281f020953fbf1f01debd5657c4a383940b020b26507f6076334f91e2366c96e9ab279fb5158090352ea1c5b0c9274504f4f0e7053af24802e51e4568d164fe986834f41e55c8e850ce1f98458c0cfc9ab380b55285a55");
}

TEST_CASE("keygen vectors")
{
  for (const auto& v : vectors()["keygen"]) {
    auto kp = bls_keygen(from_hex(v["ikm"].get<std::string>()));
    CHECK(to_hex(kp.sk.to_bytes()) == v["sk"]);
    CHECK(to_hex(kp.pk.bytes()) == v["pk"]);
    CHECK(pop_verify(kp.pk, kp.pop));
  }
}

TEST_CASE("sign vectors")
{
  for (const auto& v : vectors()["sign"]) {
    auto sk = BlsSecretKey::from_bytes(from_hex(v["sk"].get<std::string>()));
    CHECK(to_hex(bls_sign(sk, from_hex(v["message"].get<std::string>())).bytes()) == v["signature"]);
  }
}

TEST_CASE("verify vectors")
{
  for (const auto& v : vectors()["verify"])
    CHECK(verify_hex(v["pk"], v["message"], v["signature"]) == v["output"].get<bool>());
}

TEST_CASE("aggregate vectors")
{
  for (const auto& v : vectors()["aggregate"]) {
    std::vector<BlsSignature> sigs;
    for (const auto& s : v["input"])
      sigs.push_back(BlsSignature::from_bytes(from_hex(s.get<std::string>())));
    CHECK(to_hex(bls_aggregate_sigs(sigs).bytes()) == v["output"]);
  }
}

TEST_CASE("fast aggregate verify vectors")
{
  for (const auto& v : vectors()["fast_aggregate_verify"]) {
    std::vector<BlsPublicKey> pks;
    for (const auto& p : v["pks"])
      pks.push_back(BlsPublicKey::from_bytes(from_hex(p.get<std::string>())));
    auto sig = BlsSignature::from_bytes(from_hex(v["signature"].get<std::string>()));
    CHECK(bls_fast_aggregate_verify(pks, from_hex(v["message"].get<std::string>()), sig) == v["output"].get<bool>());
  }
}

TEST_CASE("proof of possession vectors")
{
  for (const auto& v : vectors()["pop"]) {
    auto pk = BlsPublicKey::from_bytes(from_hex(v["pk"].get<std::string>()));
    ProofOfPossession pop{BlsSignature::from_bytes(from_hex(v["proof"].get<std::string>()))};
    CHECK(pop_verify(pk, pop) == v["output"].get<bool>());
    if (!v["sk"].is_null()) {
      auto sk = BlsSecretKey::from_bytes(from_hex(v["sk"].get<std::string>()));
      CHECK(to_hex(pop_prove(sk).proof.bytes()) == v["proof"]);
    }
  }
}

TEST_CASE("keygen is deterministic and rejects short seeds")
{
  Buffer seed(32, 9);
  auto a = bls_keygen(seed);
  auto b = bls_keygen(seed);
  CHECK(a.sk.to_bytes() == b.sk.to_bytes());
  CHECK(a.pk == b.pk);
  CHECK(a.pk.bytes().size() == 48);
  CHECK(a.pop.proof.bytes().size() == 96);
  CHECK_THROWS_AS(bls_keygen(Buffer(31, 9)), WeakSeed);
}

TEST_CASE("sign then verify, and bit flips fail")
{
  auto kp = keypair(1);
  Buffer msg{'h', 'e', 'l', 'l', 'o'};
  auto sig = bls_sign(kp.sk, msg);
  CHECK(bls_verify(kp.pk, msg, sig));

  for (size_t bit = 0; bit < msg.size() * 8; ++bit) {
    Buffer flipped = msg;
    flipped[bit / 8] ^= static_cast<uint8_t>(1 << (bit % 8));
    CHECK_FALSE(bls_verify(kp.pk, flipped, sig));
  }
  CHECK_FALSE(bls_verify(keypair(2).pk, msg, sig));

  // A flipped signature bit either fails to decode or fails to verify.
  int rejected = 0;
  for (size_t bit = 0; bit < 96 * 8; bit += 13) {
    auto bytes = sig.bytes();
    bytes[bit / 8] ^= static_cast<uint8_t>(1 << (bit % 8));
    try {
      if (!bls_verify(kp.pk, msg, BlsSignature::from_bytes(bytes)))
        ++rejected;
    }
    catch (const MalformedPoint&) {
      ++rejected;
    }
  }
  CHECK(rejected == (96 * 8 + 12) / 13);
}

TEST_CASE("malformed points")
{
  CHECK_THROWS_AS(BlsPublicKey::from_bytes(Buffer(47, 0)), MalformedPoint);
  CHECK_THROWS_AS(BlsPublicKey::from_bytes(Buffer(48, 0xFF)), MalformedPoint);
  Buffer inf(48, 0);
  inf[0] = 0xC0;
  CHECK_THROWS_AS(BlsPublicKey::from_bytes(inf), MalformedPoint);
  CHECK_THROWS_AS(BlsSignature::from_bytes(Buffer(96, 0x13)), MalformedPoint);
  CHECK_THROWS_AS(BlsSecretKey::from_bytes(Buffer(32, 0)), Error);
  CHECK_THROWS_AS(BlsSecretKey::from_bytes(Buffer(32, 0xFF)), Error);
}

TEST_CASE("aggregation of a single element is the identity map")
{
  auto kp = keypair(3);
  auto sig = bls_sign(kp.sk, Buffer{1});
  std::vector<BlsSignature> one{sig};
  CHECK(bls_aggregate_sigs(one) == sig);
  std::vector<BlsPublicKey> pk{kp.pk};
  CHECK(bls_aggregate_pks(pk) == kp.pk);
  CHECK_THROWS_AS(bls_aggregate_sigs({}), EmptyInput);
  CHECK_THROWS_AS(bls_aggregate_pks({}), EmptyInput);
}

TEST_CASE("property: aggregation homomorphism for 1..16 signers")
{
  std::mt19937_64 rng(99);
  Buffer msg{'t', 'b', 's'};
  for (size_t n = 1; n <= 16; ++n) {
    std::vector<BlsKeyPair> keys;
    std::vector<BlsPublicKey> pks;
    std::vector<BlsSignature> sigs;
    for (size_t i = 0; i < n; ++i) {
      keys.push_back(keypair(static_cast<uint8_t>(16 * n + i)));
      pks.push_back(keys.back().pk);
      sigs.push_back(bls_sign(keys.back().sk, msg));
    }
    auto agg_pk = bls_aggregate_pks(pks);
    auto agg_sig = bls_aggregate_sigs(sigs);
    CHECK(agg_sig.bytes().size() == 96);
    CHECK(agg_pk.bytes().size() == 48);
    CHECK(bls_verify(agg_pk, msg, agg_sig));
    CHECK_FALSE(bls_verify(agg_pk, Buffer{'t', 'b', 'x'}, agg_sig));

    // order independence
    auto shuffled_pks = pks;
    auto shuffled_sigs = sigs;
    std::shuffle(shuffled_pks.begin(), shuffled_pks.end(), rng);
    std::shuffle(shuffled_sigs.begin(), shuffled_sigs.end(), rng);
    CHECK(bls_aggregate_pks(shuffled_pks) == agg_pk);
    CHECK(bls_aggregate_sigs(shuffled_sigs) == agg_sig);

    if (n >= 2) {
      // omit one piece
      std::vector<BlsSignature> missing(sigs.begin() + 1, sigs.end());
      CHECK_FALSE(bls_verify(agg_pk, msg, bls_aggregate_sigs(missing)));

      // substitute a piece from a foreign key
      auto foreign = keypair(0xEE);
      auto swapped = sigs;
      swapped[0] = bls_sign(foreign.sk, msg);
      CHECK_FALSE(bls_verify(agg_pk, msg, bls_aggregate_sigs(swapped)));

      // duplicate one piece in place of another
      auto duplicated = sigs;
      duplicated[1] = duplicated[0];
      CHECK_FALSE(bls_verify(agg_pk, msg, bls_aggregate_sigs(duplicated)));
    }
  }
}

TEST_CASE("three signers over the same bytes")
{
  Buffer tbs(200, 0x33);
  std::vector<BlsPublicKey> pks;
  std::vector<BlsSignature> sigs;
  for (uint8_t i = 0; i < 3; ++i) {
    auto kp = keypair(40 + i);
    pks.push_back(kp.pk);
    sigs.push_back(bls_sign(kp.sk, tbs));
  }
  CHECK(bls_verify(bls_aggregate_pks(pks), tbs, bls_aggregate_sigs(sigs)));
  std::vector<BlsSignature> two(sigs.begin(), sigs.begin() + 2);
  CHECK_FALSE(bls_verify(bls_aggregate_pks(pks), tbs, bls_aggregate_sigs(two)));
}

TEST_CASE("property: proof of possession soundness")
{
  for (uint8_t i = 0; i < 8; ++i) {
    auto a = keypair(100 + i);
    auto b = keypair(150 + i);
    CHECK(pop_verify(a.pk, a.pop));
    CHECK(pop_verify(a.pk, pop_prove(a.sk)));
    CHECK_FALSE(pop_verify(b.pk, a.pop));
    // A message signature over the key bytes is not a proof (domain separation).
    CHECK_FALSE(pop_verify(a.pk, ProofOfPossession{bls_sign(a.sk, a.pk.bytes())}));
  }
}

} // TEST_SUITE
