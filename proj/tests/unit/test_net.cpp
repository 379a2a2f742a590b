#include "mps/net/nonce_cache.hpp"
#include "mps/net/sim.hpp"
#include "mps/net/udp.hpp"

#include "doctest.h"

#include <atomic>
#include <random>
#include <set>
#include <thread>

using namespace mps;
using namespace mps::net;

namespace {

InterestPacket
interest(const char* uri)
{
  InterestPacket i;
  i.name = Name(uri);
  return i;
}

DataPacket
data(const Name& name, std::string_view text = "payload")
{
  DataPacket d;
  d.name = name;
  d.content.assign(text.begin(), text.end());
  return d;
}

InterestHandler
echo()
{
  return [](const InterestPacket& i) { return std::optional<DataPacket>(data(i.name)); };
}

struct Outcome
{
  std::optional<DataPacket> data;
  bool timed_out = false;
  uint64_t at = 0;
};

Outcome
ask(SimFabric& fabric, Face& face, InterestPacket i, uint64_t timeout = 1000)
{
  Outcome out;
  bool done = false;
  face.express_interest(
    i, timeout,
    [&](const DataPacket& d) {
      out.data = d;
      out.at = fabric.now_ms();
      done = true;
    },
    [&] {
      out.timed_out = true;
      out.at = fabric.now_ms();
      done = true;
    });
  fabric.run_until([&] { return done; });
  return out;
}

} // namespace

TEST_SUITE("net")
{

TEST_CASE("registered producer answers after one round trip")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  fabric.set_link("a", "b", {25, 0.0});
  b.register_prefix(Name("/b"), echo());

  uint64_t start = fabric.now_ms();
  auto out = ask(fabric, a, interest("/b/x"));
  REQUIRE(out.data);
  CHECK(out.data->name == Name("/b/x"));
  CHECK(out.at - start == 50);
  CHECK(a.interests_expressed() == 1);
  CHECK(fabric.trace().size() == 2);
}

TEST_CASE("exact, longer and sibling names")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  b.register_prefix(Name("/b/svc"), echo());
  CHECK(ask(fabric, a, interest("/b/svc")).data);
  CHECK(ask(fabric, a, interest("/b/svc/deep/er")).data);
  CHECK(ask(fabric, a, interest("/b/other")).timed_out);
}

TEST_CASE("no producer times out at the deadline")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  uint64_t start = fabric.now_ms();
  auto out = ask(fabric, a, interest("/nobody"), 4000);
  CHECK(out.timed_out);
  CHECK(out.at - start == 4000);
}

TEST_CASE("a handler returning nothing leads to a timeout")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  b.register_prefix(Name("/b"), [](const InterestPacket&) { return std::optional<DataPacket>(); });
  CHECK(ask(fabric, a, interest("/b/x")).timed_out);
}

TEST_CASE("a Data that does not answer the Interest is not delivered")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  b.register_prefix(Name("/b"), [](const InterestPacket&) { return std::optional<DataPacket>(data(Name("/elsewhere"))); });
  CHECK(ask(fabric, a, interest("/b/x")).timed_out);
}

TEST_CASE("total loss always times out")
{
  FabricConfig cfg;
  cfg.default_link = {10, 1.0};
  SimFabric fabric(cfg);
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  b.register_prefix(Name("/b"), echo());
  for (int i = 0; i < 50; ++i)
    CHECK(ask(fabric, a, interest("/b/x")).timed_out);
}

TEST_CASE("offline nodes neither answer nor send")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  b.register_prefix(Name("/b"), echo());
  fabric.set_online("b", false);
  CHECK(ask(fabric, a, interest("/b/x")).timed_out);
  fabric.set_online("b", true);
  CHECK(ask(fabric, a, interest("/b/x")).data);
  a.register_prefix(Name("/a"), echo());
  fabric.set_online("b", false);
  CHECK(ask(fabric, b, interest("/a/x")).timed_out);
}

TEST_CASE("longest prefix wins, across nodes and within one")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& b = fabric.add_node("b");
  auto& c = fabric.add_node("c");
  b.register_prefix(Name("/x"), [](const InterestPacket& i) { return std::optional<DataPacket>(data(i.name, "b")); });
  c.register_prefix(Name("/x/y"), [](const InterestPacket& i) { return std::optional<DataPacket>(data(i.name, "c")); });
  c.register_prefix(Name("/x/y/z"),
                    [](const InterestPacket& i) { return std::optional<DataPacket>(data(i.name, "cz")); });
  CHECK(ask(fabric, a, interest("/x/q")).data->content == Buffer{'b'});
  CHECK(ask(fabric, a, interest("/x/y/q")).data->content == Buffer{'c'});
  CHECK(ask(fabric, a, interest("/x/y/z/q")).data->content == Buffer{'c', 'z'});
}

TEST_CASE("forwarding hints steer routing")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  auto& repo = fabric.add_node("repo");
  repo.register_prefix(Name("/repo"), [](const InterestPacket&) { return std::optional<DataPacket>(); });
  repo.register_prefix(Name("/results"), echo());
  auto i = interest("/results/abc");
  i.forwarding_hint = Name("/repo");
  CHECK(ask(fabric, a, i).data);
}

TEST_CASE("duplicate registration and closed faces")
{
  SimFabric fabric;
  auto& a = fabric.add_node("a");
  a.register_prefix(Name("/p"), echo());
  CHECK_THROWS_AS(a.register_prefix(Name("/p"), echo()), DuplicatePrefix);
  a.unregister_prefix(Name("/p"));
  a.register_prefix(Name("/p"), echo());
  a.close();
  CHECK(a.is_closed());
  CHECK_THROWS_AS(a.express_interest(interest("/p"), 10, {}, {}), FaceClosed);
  CHECK_THROWS_AS(a.register_prefix(Name("/q"), echo()), FaceClosed);
}

TEST_CASE("property: identical seed and topology give identical traces")
{
  auto run = [](uint64_t seed) {
    FabricConfig cfg;
    cfg.rng_seed = seed;
    cfg.default_link = {7, 0.3};
    SimFabric fabric(cfg);
    auto& a = fabric.add_node("a");
    auto& b = fabric.add_node("b");
    fabric.set_link("a", "b", {13, 0.4});
    b.register_prefix(Name("/b"), echo());
    std::vector<std::pair<uint64_t, bool>> events;
    for (int i = 0; i < 200; ++i) {
      auto in = interest("/b");
      in.name.append(std::to_string(i));
      a.express_interest(
        in, 100, [&](const DataPacket&) { events.emplace_back(fabric.now_ms(), true); },
        [&] { events.emplace_back(fabric.now_ms(), false); });
    }
    fabric.run();
    std::vector<std::tuple<uint64_t, std::string, bool, Buffer>> trace;
    for (const auto& r : fabric.trace())
      trace.emplace_back(r.time_ms, r.from, r.delivered, r.wire);
    return std::make_pair(events, trace);
  };
  auto first = run(42);
  CHECK(first == run(42));
  CHECK(first != run(43));
  size_t answered = std::count_if(first.first.begin(), first.first.end(), [](auto& e) { return e.second; });
  CHECK(answered > 40);
  CHECK(answered < 160);
}

TEST_CASE("fabric configuration file")
{
  auto cfg = parse_fabric_config(R"(
seed = 9
[default]
latency_ms = 4
drop_probability = 0.25

[[node]]
name = "coordinator"
[[node]]
name = "signer"
online = false

[[link]]
a = "signer"
b = "coordinator"
latency_ms = 30
)");
  CHECK(cfg.rng_seed == 9);
  CHECK(cfg.default_link.latency_ms == 4);
  CHECK(cfg.nodes == std::vector<std::string>{"coordinator", "signer"});
  CHECK(cfg.offline == std::vector<std::string>{"signer"});
  auto& link = cfg.links.at({"coordinator", "signer"});
  CHECK(link.latency_ms == 30);
  CHECK(link.drop_probability == 0.25);

  SimFabric fabric(cfg);
  CHECK_FALSE(fabric.is_online("signer"));
  CHECK(fabric.is_online("coordinator"));

  CHECK_THROWS_AS(parse_fabric_config("[default]\ndrop_probability = 2.0"), Error);
  CHECK_THROWS_AS(parse_fabric_config("[[node]]\nonline = true"), Error);
  CHECK_THROWS_AS(parse_fabric_config("seed = = 1"), Error);
}

TEST_CASE("nonce cache verdicts")
{
  crypto::DeterministicRandom rng(1);
  NonceCache cache({}, rng);
  uint64_t now = 1'700'000'000'000;
  Buffer n1{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(cache.check_and_record(now, n1, now) == NonceCheck::Accept);
  CHECK(cache.check_and_record(now, n1, now + 5) == NonceCheck::Replayed);
  CHECK(cache.check_and_record(now - 60'001, Buffer{9}, now) == NonceCheck::Stale);
  CHECK(cache.check_and_record(now + 60'001, Buffer{9}, now) == NonceCheck::Stale);
  CHECK(cache.check_and_record(now - 60'000, Buffer{9}, now) == NonceCheck::Accept);
  // a stale verdict records nothing
  CHECK_FALSE(cache.probably_contains(Buffer{10}));
  CHECK(cache.check_and_record(now - 90'000, Buffer{10}, now) == NonceCheck::Stale);
  CHECK_FALSE(cache.probably_contains(Buffer{10}));
}

TEST_CASE("property: a nonce is remembered for as long as its timestamp is fresh")
{
  crypto::DeterministicRandom rng(2);
  NonceCache cache({}, rng);
  const uint64_t w = cache.config().grace_window_ms;
  std::mt19937_64 gen(5);
  uint64_t now = 1'700'000'000'000;
  for (int i = 0; i < 2000; ++i) {
    now += gen() % 500;
    // timestamps anywhere within the window, including the future
    uint64_t ts = now - w + gen() % (2 * w + 1);
    Buffer nonce(8);
    for (auto& b : nonce)
      b = static_cast<uint8_t>(gen());
    if (cache.check_and_record(ts, nonce, now) != NonceCheck::Accept)
      continue;
    // replay at the latest moment the timestamp is still fresh
    uint64_t latest = ts + w;
    CHECK(cache.check_and_record(ts, nonce, std::max(now, latest)) == NonceCheck::Replayed);
  }
}

TEST_CASE("nonce cache false-positive rate at design capacity")
{
  crypto::DeterministicRandom rng(3);
  NonceCache cache({}, rng);
  uint64_t now = 1'700'000'000'000;
  auto nonce = [](uint64_t i) {
    Buffer b(8);
    for (int k = 0; k < 8; ++k)
      b[k] = static_cast<uint8_t>(i >> (8 * k));
    return b;
  };
  for (uint64_t i = 0; i < 100'000; ++i)
    REQUIRE(cache.check_and_record(now, nonce(i), now) != NonceCheck::Stale);
  for (uint64_t i = 0; i < 100'000; ++i)
    REQUIRE(cache.probably_contains(nonce(i)));
  size_t false_positives = 0;
  for (uint64_t i = 100'000; i < 200'000; ++i)
    false_positives += cache.probably_contains(nonce(i));
  CHECK(false_positives < 1000);
  MESSAGE("false positives: " << false_positives << " / 100000");
}

TEST_CASE("old generations are forgotten")
{
  crypto::DeterministicRandom rng(4);
  NonceCache cache({}, rng);
  uint64_t now = 1'700'000'000'000;
  Buffer n{7};
  CHECK(cache.check_and_record(now, n, now) == NonceCheck::Accept);
  now += 3 * cache.config().grace_window_ms + 1;
  CHECK(cache.check_and_record(now, n, now) == NonceCheck::Accept);
}

TEST_CASE("check_and_record is atomic")
{
  NonceCache cache;
  uint64_t now = 1'700'000'000'000;
  for (int round = 0; round < 50; ++round) {
    Buffer nonce{static_cast<uint8_t>(round), 1, 2, 3};
    std::atomic<int> accepted{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
      threads.emplace_back([&] {
        if (cache.check_and_record(now, nonce, now) == NonceCheck::Accept)
          ++accepted;
      });
    for (auto& t : threads)
      t.join();
    CHECK(accepted == 1);
  }
}

TEST_CASE("UDP faces exchange packets on loopback")
{
  UdpFace server;
  UdpFace client;
  server.register_prefix(Name("/srv"), echo());
  client.add_route(Name("/srv"), {"127.0.0.1", server.local_port()});

  std::thread loop([&] { server.run(); });

  auto got = fetch(client, interest("/srv/hello"), 2000);
  REQUIRE(got);
  CHECK(got->name == Name("/srv/hello"));
  CHECK(got->content == Buffer{'p', 'a', 'y', 'l', 'o', 'a', 'd'});

  // no route: times out
  auto t0 = client.now_ms();
  CHECK_FALSE(fetch(client, interest("/nowhere"), 100));
  CHECK(client.now_ms() - t0 >= 100);

  server.post([&] { server.close(); });
  loop.join();
  CHECK_FALSE(fetch_with_retries(client, interest("/srv/again"), 50, 2));
  CHECK(client.interests_expressed() == 4);
}

TEST_CASE("UDP endpoints and limits")
{
  auto ep = UdpEndpoint::parse("localhost:6363");
  CHECK(ep.host == "localhost");
  CHECK(ep.port == 6363);
  CHECK_THROWS_AS(UdpEndpoint::parse("nohost"), Error);
  CHECK_THROWS_AS(UdpEndpoint::parse("h:99999"), Error);

  UdpFace a;
  UdpFace b;
  a.add_route(Name("/b"), {"127.0.0.1", b.local_port()});
  auto big = interest("/b/x");
  big.app_params.assign(9000, 1);
  CHECK_THROWS_AS(a.express_interest(big, 10, {}, {}), Error);
}

} // TEST_SUITE
