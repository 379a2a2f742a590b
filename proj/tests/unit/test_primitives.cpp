#include "mps/crypto/aead.hpp"
#include "mps/crypto/hmac.hpp"
#include "mps/crypto/kex.hpp"
#include "mps/crypto/random.hpp"

#include "doctest.h"
#include "json.hpp"

#include <fstream>
#include <set>

using namespace mps;
using namespace mps::crypto;

namespace {

const nlohmann::json&
rfc()
{
  static nlohmann::json v = [] {
    std::ifstream in(MPS_TEST_DATA_DIR "/rfc_vectors.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
  }();
  return v;
}

Buffer
hex(const nlohmann::json& j)
{
  return from_hex(j.get<std::string>());
}

X25519Key
key32(const Buffer& b)
{
  X25519Key k;
  std::copy(b.begin(), b.end(), k.begin());
  return k;
}

} // namespace

TEST_SUITE("primitives")
{

TEST_CASE("ChaCha20-Poly1305 RFC 8439 vector")
{
  const auto& v = rfc()["chacha20poly1305"];
  AeadNonce nonce;
  Buffer n = hex(v["nonce"]);
  std::copy(n.begin(), n.end(), nonce.begin());
  Buffer ct = aead_seal(hex(v["key"]), nonce, hex(v["aad"]), hex(v["plaintext"]));
  CHECK(to_hex(ct) == v["ciphertext"].get<std::string>() + v["tag"].get<std::string>());
  CHECK(aead_open(hex(v["key"]), nonce, hex(v["aad"]), ct) == hex(v["plaintext"]));
}

TEST_CASE("HMAC-SHA256 RFC 4231 vectors")
{
  for (const auto& v : rfc()["hmac_sha256"]) {
    auto tag = hmac_tag(hex(v["key"]), hex(v["data"]));
    CHECK(to_hex(tag) == v["mac"]);
    CHECK(hmac_verify(hex(v["key"]), hex(v["data"]), tag));
  }
}

TEST_CASE("HKDF-SHA256 RFC 5869 vectors")
{
  for (const auto& v : rfc()["hkdf_sha256"]) {
    CHECK(to_hex(hkdf_extract(hex(v["salt"]), hex(v["ikm"]))) == v["prk"]);
    CHECK(to_hex(hkdf_sha256(hex(v["salt"]), hex(v["ikm"]), hex(v["info"]), v["length"].get<size_t>())) == v["okm"]);
  }
}

TEST_CASE("X25519 RFC 7748 vector")
{
  const auto& v = rfc()["x25519"];
  auto alice = dh_from_secret(key32(hex(v["alice_sk"])));
  auto bob = dh_from_secret(key32(hex(v["bob_sk"])));
  CHECK(to_hex(alice.epk) == v["alice_pk"]);
  CHECK(to_hex(bob.epk) == v["bob_pk"]);
  CHECK(to_hex(x25519(alice.esk, bob.epk)) == v["shared"]);
}

TEST_CASE("both sides derive the same session keys")
{
  DeterministicRandom rng(5);
  auto a = dh_keygen(rng);
  auto b = dh_keygen(rng);
  Buffer salt{1, 2, 3, 4, 5, 6, 7, 8};
  Buffer transcript{'t'};
  auto ka = derive_keys(a.esk, b.epk, salt, transcript);
  auto kb = derive_keys(b.esk, a.epk, salt, transcript);
  CHECK(ka.k_mac == kb.k_mac);
  CHECK(ka.k_enc == kb.k_enc);

  auto other_salt = derive_keys(a.esk, b.epk, Buffer{9}, transcript);
  CHECK(other_salt.k_mac != ka.k_mac);
  CHECK(other_salt.k_enc != ka.k_enc);

  auto other_transcript = derive_keys(a.esk, b.epk, salt, Buffer{'u'});
  CHECK(other_transcript.k_enc != ka.k_enc);
}

TEST_CASE("k_mac differs from k_enc over 1000 sessions")
{
  SystemRandom rng;
  std::set<SymmetricKey> seen;
  for (int i = 0; i < 1000; ++i) {
    auto a = dh_keygen(rng);
    auto b = dh_keygen(rng);
    auto keys = derive_keys(a.esk, b.epk, rng.bytes(8), rng.bytes(16));
    CHECK(keys.k_mac != keys.k_enc);
    seen.insert(keys.k_enc);
  }
  CHECK(seen.size() == 1000);
}

TEST_CASE("low-order peer key is rejected")
{
  DeterministicRandom rng(6);
  auto a = dh_keygen(rng);
  X25519Key zero{};
  CHECK_THROWS_AS(derive_keys(a.esk, zero, Buffer{1}, Buffer{}), LowOrderPoint);
  X25519Key one{};
  one[0] = 1;
  CHECK_THROWS_AS(x25519(a.esk, one), LowOrderPoint);
}

TEST_CASE("AEAD round trip and tamper detection")
{
  SymmetricKey key{};
  key[0] = 7;
  auto nonce = make_nonce("par", 0);
  Buffer aad{'n', 'a', 'm', 'e'};
  Buffer pt(300, 0x61);
  Buffer ct = aead_seal(key, nonce, aad, pt);
  CHECK(ct.size() == pt.size() + AeadTagSize);
  CHECK(aead_open(key, nonce, aad, ct) == pt);

  for (size_t i = 0; i < ct.size(); i += 17) {
    Buffer bad = ct;
    bad[i] ^= 0x01;
    CHECK_THROWS_AS(aead_open(key, nonce, aad, bad), AuthFailure);
  }
  CHECK_THROWS_AS(aead_open(key, nonce, Buffer{'x'}, ct), AuthFailure);
  CHECK_THROWS_AS(aead_open(key, make_nonce("res", 0), aad, ct), AuthFailure);
  CHECK_THROWS_AS(aead_open(key, nonce, aad, Buffer(5, 0)), AuthFailure);
}

TEST_CASE("nonce layout is role tag then counter")
{
  auto n = make_nonce("ack", 0x0102);
  CHECK(to_hex(n) == "61636b000000000000000102");
  CHECK_THROWS_AS(make_nonce("toolong", 0), Error);
}

TEST_CASE("HMAC rejects a wrong key and truncated tags")
{
  Buffer key(32, 1);
  Buffer msg{'m'};
  auto tag = hmac_tag(key, msg);
  CHECK(hmac_verify(key, msg, tag));
  CHECK_FALSE(hmac_verify(Buffer(32, 2), msg, tag));
  CHECK_FALSE(hmac_verify(key, msg, ByteSpan(tag).first(31)));
}

TEST_CASE("deterministic random is reproducible")
{
  DeterministicRandom a(1), b(1), c(2);
  CHECK(a.bytes(40) == b.bytes(40));
  CHECK(a.bytes(40) != c.bytes(40));
  CHECK(a.bytes(16) != a.bytes(16));
}

} // TEST_SUITE
