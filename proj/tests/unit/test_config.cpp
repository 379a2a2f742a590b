#include "mps/rpc/signer_config.hpp"
#include "mps/schema/keyfile.hpp"
#include "support/keys.hpp"

#include "doctest.h"

#include <fstream>
#include <unistd.h>

using namespace mps;

namespace {

/// A scratch directory removed at scope exit.
struct TempDir
{
  std::filesystem::path path;

  TempDir()
    : path(std::filesystem::temp_directory_path() / ("mps-config-" + std::to_string(::getpid())))
  {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  void write(const std::string& name, std::string_view text) const { std::ofstream(path / name) << text; }

  void write(const std::string& name, ByteSpan bytes) const
  {
    std::ofstream out(path / name, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
};

DataPacket
sample()
{
  DataPacket d;
  d.name = Name("/d/x");
  return d;
}

constexpr std::string_view Seed = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";

} // namespace

TEST_CASE("key files")
{
  TempDir dir;
  dir.write("a.blskey", std::string(Seed) + "\n");
  auto kp = schema::load_key_file(dir.path / "a.blskey");
  CHECK(kp.pk == crypto::bls_keygen(from_hex(Seed)).pk);

  dir.write("short.blskey", std::string_view("0011"));
  CHECK_THROWS_AS(schema::load_key_file(dir.path / "short.blskey"), Error);
  dir.write("junk.blskey", std::string_view("not hex at all"));
  CHECK_THROWS_AS(schema::load_key_file(dir.path / "junk.blskey"), Error);
  CHECK_THROWS_AS(schema::load_key_file(dir.path / "missing.blskey"), Error);

  crypto::DeterministicRandom rng(5);
  auto created = schema::create_key_file(dir.path / "new.blskey", rng);
  CHECK(schema::load_key_file(dir.path / "new.blskey").pk == created.pk);
  CHECK_THROWS_AS(schema::create_key_file(dir.path / "new.blskey", rng), Error);
}

TEST_CASE("signer daemon configuration")
{
  TempDir dir;
  auto anchor = testing::make_anchor(Name("/Site/KEY/1"));
  auto alice = testing::make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor);
  dir.write("bob.blskey", Seed);
  dir.write("anchors.tlv", schema::KnownSigners({anchor.cert}).to_wire());
  dir.write("signers.tlv", schema::KnownSigners({alice.cert}).to_wire());
  std::filesystem::create_directories(dir.path / "schema");
  dir.write("schema/a.schema", std::string_view("data-profile /d/*\nall-of { /A/*/KEY/* }\n"));

  std::string base = R"(
key = "bob.blskey"
key_name = "/Site/operation/bob/KEY/1"
schema_dir = "schema"
signers = "signers.tlv"

[coordinator]
request = "/<SignerPrefix>/MPS/request/Site/maintenance/<operator>/<>"
key = "/Site/maintenance/<operator>/KEY/<>"
anchors = "anchors.tlv"

[transport]
listen = "127.0.0.1:6363"
)";

  SUBCASE("defaults")
  {
    auto cfg = rpc::parse_signerd_config(base, dir.path);
    CHECK(cfg.signer.identity.key_name == Name("/Site/operation/bob/KEY/1"));
    CHECK(cfg.signer.identity.keys.pk == crypto::bls_keygen(from_hex(Seed)).pk);
    CHECK(cfg.signer.prefix == Name("/Site/operation/bob"));
    CHECK_FALSE(cfg.signer.publish_prefix);
    CHECK(cfg.signer.policy.rules.size() == 1);
    CHECK(cfg.signer.keychain.size() == 1);
    CHECK(cfg.signer.coordinator_schema.anchors.size() == 1);
    CHECK(cfg.signer.eta_ms == rpc::SignerConfig::DefaultEtaMs);
    CHECK(cfg.signer.result_lifetime_ms == rpc::SignerConfig::DefaultResultLifetimeMs);
    CHECK_FALSE(cfg.signer.threaded_hook);
    CHECK(cfg.listen.port == 6363);
    CHECK(cfg.routes.empty());
  }
  SUBCASE("every setting")
  {
    auto text = base + R"(routes = [ { prefix = "/Site/maintenance/Alice", to = "127.0.0.1:7000" } ]

[nonce]
grace_window_ms = 30000
)";
    text.insert(0, R"(prefix = "/bob"
publish_prefix = "/Repo/anon"
hook = "exit 0"
eta_ms = 1500
result_lifetime_ms = 1000
max_sessions = 8
)");
    auto cfg = rpc::parse_signerd_config(text, dir.path);
    CHECK(cfg.signer.prefix == Name("/bob"));
    CHECK(cfg.signer.publish_prefix == Name("/Repo/anon"));
    CHECK(cfg.signer.threaded_hook);
    CHECK(std::holds_alternative<rpc::Approve>(cfg.signer.hook(sample())));
    CHECK(cfg.signer.eta_ms == 1500);
    CHECK(cfg.signer.result_lifetime_ms == 1000);
    CHECK(cfg.signer.max_sessions == 8);
    CHECK(cfg.signer.nonce.grace_window_ms == 30000);
    REQUIRE(cfg.routes.size() == 1);
    CHECK(cfg.routes[0].first == Name("/Site/maintenance/Alice"));
    CHECK(cfg.routes[0].second.port == 7000);
  }
  SUBCASE("errors")
  {
    CHECK_THROWS_AS(rpc::parse_signerd_config("key = ", dir.path), Error);
    CHECK_THROWS_WITH_AS(rpc::parse_signerd_config("key_name = \"/a/KEY/1\"", dir.path),
                         doctest::Contains("'key'"), Error);
    auto negative = base;
    negative.insert(0, "eta_ms = -1\n");
    CHECK_THROWS_AS(rpc::parse_signerd_config(negative, dir.path), Error);
    auto bad_route = base + "routes = [ { prefix = \"/x\" } ]\n";
    CHECK_THROWS_AS(rpc::parse_signerd_config(bad_route, dir.path), Error);
  }
  SUBCASE("auto-deny hook")
  {
    auto text = base;
    text.insert(0, "hook = \"auto-deny\"\n");
    auto cfg = rpc::parse_signerd_config(text, dir.path);
    CHECK(std::holds_alternative<rpc::Deny>(cfg.signer.hook(sample())));
    CHECK_FALSE(cfg.signer.threaded_hook);
  }
}
