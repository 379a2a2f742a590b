#include "mps/crypto/aead.hpp"
#include "mps/rpc/coordinator.hpp"
#include "mps/rpc/signer.hpp"
#include "mps/tlv.hpp"
#include "support/scenario.hpp"

#include "doctest.h"

#include <random>

using namespace mps;
using namespace mps::rpc;
using mps::testing::Scenario;
using mps::testing::ScenarioOptions;

namespace {

const Name ParamPrefix("/Site/maintenance/Alice/MPS/param");

/// Alice's side of one exchange, driven step by step over the fabric.
struct ManualExchange
{
  Scenario& sc;
  const schema::Certificate& signer_cert;
  RpcSession session;
  std::map<Name, DataPacket> served;

  ManualExchange(Scenario& scenario, const std::string& signer)
    : sc(scenario)
    , signer_cert(scenario.signer(signer).cert)
    , session(open_session(signer_cert, Name("/Site/maintenance/Alice"), scenario.rng))
  {
    sc.face("alice").register_prefix(ParamPrefix, [this](const InterestPacket& i) -> std::optional<DataPacket> {
      auto it = served.find(i.name);
      if (it == served.end())
        return std::nullopt;
      return it->second;
    });
  }

  ~ManualExchange() { sc.face("alice").unregister_prefix(ParamPrefix); }

  InterestPacket request() { return build_request(session, sc.coordinator_identity(), sc.fabric.now_ms(), sc.rng); }

  std::optional<DataPacket> send(const InterestPacket& i) { return net::fetch(sc.face("alice"), i, 2000); }

  /// request -> ack -> parameter -> result; returns the piece.
  crypto::BlsSignature run(const DataPacket& unsigned_data)
  {
    auto ack = send(request());
    REQUIRE(ack);
    handle_ack(session, *ack, signer_cert);
    REQUIRE(session.state == SessionState::AckReceived);
    auto param = serve_parameter(session, unsigned_data);
    served[param.name] = param;
    sc.fabric.run_for(*session.eta_ms);
    auto result = send(result_interest(session));
    REQUIRE(result);
    return handle_result(session, *result, signer_cert, unsigned_data);
  }
};

DataPacket
unsigned_firmware(const Name& placeholder = Name("/Site/maintenance/Alice/MPS/siginfo/p"))
{
  auto d = Scenario::firmware();
  d.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{placeholder}, std::nullopt, std::nullopt};
  return d;
}

ScenarioOptions
manual()
{
  ScenarioOptions o;
  o.with_coordinator = false;
  return o;
}

const AttemptReport*
attempt_for(const JobResult& r, const std::string& key)
{
  for (const auto& a : r.attempts) {
    if (a.signer_key == Name(key))
      return &a;
  }
  return nullptr;
}

} // namespace

TEST_CASE("message codecs round-trip")
{
  crypto::DeterministicRandom rng(1);
  RequestParams p{Name("/a/MPS/param/x"), rng.bytes<32>(), Name("/hint")};
  CHECK(decode_request_params(encode_request_params(p)) == p);
  p.forwarding_hint.reset();
  CHECK(decode_request_params(encode_request_params(p)) == p);

  AckPayload accepted{StatusCode::Accepted, 500, Name("/r/1")};
  CHECK(decode_ack_payload(encode_ack_payload(accepted)) == accepted);
  AckPayload rejected{StatusCode::RejectedIdentity, {}, {}};
  CHECK(decode_ack_payload(encode_ack_payload(rejected)) == rejected);
  CHECK_THROWS_AS(decode_ack_payload(encode_ack_payload({StatusCode::Accepted, 500, {}})), DecodeError);

  Buffer unknown;
  tlv::append_nni_tlv(unknown, type::Status, 9);
  CHECK_THROWS_AS(decode_ack_payload(unknown), UnknownStatus);

  auto kp = testing::test_keys("codec");
  SigInfoContent content{{Name("/a/KEY/1"), Name("/b/KEY/2")}, kp.pk};
  CHECK(decode_siginfo_content(encode_siginfo_content(content)) == content);
  SigInfoContent dup{{Name("/a/KEY/1"), Name("/a/KEY/1")}, std::nullopt};
  CHECK_THROWS_AS(decode_siginfo_content(encode_siginfo_content(dup)), DecodeError);

  auto piece = crypto::bls_sign(kp.sk, as_bytes("x"));
  CHECK(decode_result_outcome(encode_result_outcome({piece})).piece == piece);
  CHECK_FALSE(decode_result_outcome(encode_result_outcome({})).piece);
}

TEST_CASE("frozen wire examples")
{
  // the same bytes are published in docs/wire.md
  CHECK(to_hex(encode_name(Name("/Site/KEY/1"))) == "070e08045369746508034b4559080131");

  DataPacket d;
  d.name = Name("/a");
  d.content = {'h', 'i'};
  d.freshness_ms = 1000;
  d.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{Name("/c/MPS/siginfo/x")}, std::nullopt, std::nullopt};
  CHECK(to_hex(tbs_bytes(d)) ==
        "0703080161180100190203e815026869161b1b01401c16071408016308034d50530807736967696e666f080178");

  crypto::X25519Key epk{};
  for (size_t i = 0; i < epk.size(); ++i)
    epk[i] = static_cast<uint8_t>(i);
  CHECK(to_hex(encode_request_params({Name("/c/MPS/param/p"), epk, std::nullopt})) ==
        "5014071208016308034d50530805706172616d080170"
        "5120000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
  CHECK(to_hex(encode_ack_payload({StatusCode::Accepted, 500, Name("/s/MPS/result/r")})) ==
        "540100550201f45615071308017308034d50530806726573756c74080172");
  CHECK(to_hex(encode_ack_payload({StatusCode::Busy, std::nullopt, std::nullopt})) == "540102");
  CHECK(to_hex(encode_result_outcome({})) == "5800");
  CHECK(to_hex(encode_siginfo_content({{Name("/A/KEY/1"), Name("/B/KEY/1")}, std::nullopt})) ==
        "070b08014108034b4559080131070b08014208034b4559080131");
  CHECK(to_hex(crypto::make_nonce(RoleAck, 0)) == "61636b000000000000000000");

  InterestPacket i;
  i.name = Name("/s/MPS/result/r");
  i.forwarding_hint = Name("/s");
  CHECK(to_hex(encode_interest(i)) == "051c071308017308034d50530806726573756c740801721e050703080173");

  Buffer big;
  tlv::append_tlv(big, tlv::type::Content, Buffer(300, 0));
  CHECK(to_hex(ByteSpan(big).first(4)) == "15fd012c");
}

TEST_CASE("names chosen by the protocol")
{
  crypto::DeterministicRandom rng(2);
  Name alice("/Site/maintenance/Alice");
  auto p1 = make_placeholder(alice, rng);
  auto p2 = make_placeholder(alice, rng);
  CHECK(p1 != p2);
  CHECK(Name("/Site/maintenance/Alice/MPS/siginfo").is_prefix_of(p1));
  CHECK(p1.size() == alice.size() + 3);
  CHECK(p1.components().back().size() == 16);

  auto x = testing::make_issued(Name("/Mfr/QA/operatorX/KEY/1"), testing::make_anchor(Name("/Mfr/KEY/1")));
  auto s = open_session(x.cert, alice, rng);
  CHECK(Name("/Site/maintenance/Alice/MPS/param").is_prefix_of(s.para_name));
  CHECK(s.para_name.components().back().size() == 16);

  auto coordinator = testing::make_issued(Name("/Site/maintenance/Alice/KEY/1"),
                                          testing::make_anchor(Name("/Site/maintenance/KEY/123")));
  auto req = build_request(s, {coordinator.key_name, coordinator.keys}, 1'700'000'000'000, rng);
  CHECK(req.name.prefix(-1).to_uri() == "/Mfr/QA/operatorX/MPS/request/Site/maintenance/Alice");
  CHECK(req.name.components().back().size() == 8);
  auto pattern = schema::NamePattern::parse("/Mfr/QA/operatorX/MPS/request/Site/maintenance/<operator>/<>");
  CHECK(pattern.matches(req.name));
  CHECK(crypto::bls_verify(coordinator.keys.pk, tbs_bytes(req), crypto::BlsSignature::from_bytes(req.sig_value)));
  CHECK(decode_request_params(req.app_params).para_name == s.para_name);
}

TEST_CASE("loopback handshake without a network")
{
  crypto::DeterministicRandom rng(3);
  auto anchor = testing::make_anchor(Name("/Site/maintenance/KEY/123"));
  auto alice = testing::make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor);
  auto x = testing::make_issued(Name("/Mfr/QA/operatorX/KEY/1"), testing::make_anchor(Name("/Mfr/KEY/1")));
  SigningIdentity coordinator{alice.key_name, alice.keys};
  SigningIdentity signer{x.key_name, x.keys};

  auto s = open_session(x.cert, Name("/Site/maintenance/Alice"), rng);
  auto request = build_request(s, coordinator, 1'700'000'000'000, rng);
  CHECK(s.state == SessionState::RequestSent);

  auto params = decode_request_params(request.app_params);
  auto signer_dh = crypto::dh_keygen(rng);
  auto keys = signer_session_keys(request, params, signer_dh);
  auto ack = make_ack(request, signer_dh, keys, {StatusCode::Accepted, 500, Name("/Mfr/QA/operatorX/MPS/result/r")},
                      signer);

  SUBCASE("accepted")
  {
    handle_ack(s, ack, x.cert);
    CHECK(s.state == SessionState::AckReceived);
    CHECK(s.keys->k_mac == keys.k_mac);
    CHECK(s.keys->k_enc == keys.k_enc);
    CHECK(s.result_name == Name("/Mfr/QA/operatorX/MPS/result/r"));
    CHECK(s.eta_ms == 500u);

    auto unsigned_data = unsigned_firmware();
    auto param = serve_parameter(s, unsigned_data);
    CHECK(s.state == SessionState::ParamServed);
    CHECK(param.name == s.para_name);
    CHECK(param.sig_info.type == SignatureType::HmacSha256);
    CHECK(hmac_check(param, keys.k_mac));
    auto opened = open_parameter(param, keys);
    CHECK(encode_data(opened) == encode_data(unsigned_data));

    auto piece = sign_without_modification(x.keys.sk, opened);
    auto result = make_result(*s.result_name, {piece}, keys, 300'000);
    CHECK(handle_result(s, result, x.cert, unsigned_data) == piece);
    CHECK(s.state == SessionState::Done);
    CHECK_THROWS_AS(fail(s, "late"), StateError);
  }
  SUBCASE("rejected status fails the session")
  {
    auto no = make_ack(request, signer_dh, keys, {StatusCode::RejectedIdentity, {}, {}}, signer);
    handle_ack(s, no, x.cert);
    CHECK(s.state == SessionState::Failed);
    CHECK(s.status == StatusCode::RejectedIdentity);
    CHECK_THROWS_AS(serve_parameter(s, unsigned_firmware()), StateError);
  }
  SUBCASE("ack signed by the wrong key")
  {
    auto y = testing::make_issued(Name("/Mfr/QA/operatorY/KEY/1"), testing::make_anchor(Name("/Mfr/KEY/1")));
    CHECK_THROWS_AS(handle_ack(s, ack, y.cert), BadSignature);
    auto forged = ack;
    bls_sign_data(forged, x.key_name, y.keys.sk);
    CHECK_THROWS_AS(handle_ack(s, forged, x.cert), BadSignature);
  }
  SUBCASE("ack encrypted under other keys")
  {
    auto other_dh = crypto::dh_keygen(rng);
    auto other = signer_session_keys(request, params, other_dh);
    auto bad = make_ack(request, signer_dh, other, {StatusCode::Accepted, 500, Name("/r")}, signer);
    CHECK_THROWS_AS(handle_ack(s, bad, x.cert), crypto::AuthFailure);
  }
  SUBCASE("tampered parameter and result")
  {
    handle_ack(s, ack, x.cert);
    auto unsigned_data = unsigned_firmware();
    auto param = serve_parameter(s, unsigned_data);
    auto tampered = param;
    tampered.content[5] ^= 1;
    CHECK_THROWS_AS(open_parameter(tampered, keys), crypto::AuthFailure);

    auto piece = sign_without_modification(x.keys.sk, unsigned_data);
    auto result = make_result(*s.result_name, {piece}, keys, 1000);
    auto bad_result = result;
    bad_result.content.back() ^= 0x80;
    CHECK_THROWS_AS(handle_result(s, bad_result, x.cert, unsigned_data), crypto::AuthFailure);
    CHECK(s.state == SessionState::ParamServed);

    auto altered = unsigned_data;
    altered.sig_info.key_locator.name = Name("/elsewhere");
    auto wrong_piece = make_result(*s.result_name, {sign_without_modification(x.keys.sk, altered)}, keys, 1000);
    CHECK_THROWS_AS(handle_result(s, wrong_piece, x.cert, unsigned_data), BadPiece);

    auto denied = make_result(*s.result_name, {}, keys, 1000);
    CHECK_THROWS_AS(handle_result(s, denied, x.cert, unsigned_data), SignerDenied);
  }
}

TEST_CASE("session state machine rejects out-of-order steps")
{
  auto anchor = testing::make_anchor(Name("/Site/maintenance/KEY/123"));
  auto alice = testing::make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor);
  auto x = testing::make_issued(Name("/Mfr/QA/operatorX/KEY/1"), testing::make_anchor(Name("/Mfr/KEY/1")));
  SigningIdentity coordinator{alice.key_name, alice.keys};
  SigningIdentity signer{x.key_name, x.keys};
  auto unsigned_data = unsigned_firmware();

  // Legal order: build_request, handle_ack, serve_parameter, handle_result.
  enum Op { Build, Ack, Serve, Result, Fail };
  std::mt19937_64 gen(42);
  crypto::DeterministicRandom rng(42);
  size_t rejected = 0, completed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = open_session(x.cert, Name("/Site/maintenance/Alice"), rng);
    std::optional<DataPacket> ack;
    std::optional<crypto::SessionKeys> keys;
    int expected = Build; // next legal op
    for (int step = 0; step < 6; ++step) {
      auto op = static_cast<Op>(gen() % 5);
      auto before = s.state;
      bool threw = false;
      try {
        switch (op) {
        case Build: {
          auto req = build_request(s, coordinator, 1'700'000'000'000, rng);
          auto params = decode_request_params(req.app_params);
          auto dh = crypto::dh_keygen(rng);
          keys = signer_session_keys(req, params, dh);
          ack = make_ack(req, dh, *keys, {StatusCode::Accepted, 10, Name("/res/1")}, signer);
          break;
        }
        case Ack:
          if (!ack)
            throw StateError("no ack yet");
          handle_ack(s, *ack, x.cert);
          break;
        case Serve:
          serve_parameter(s, unsigned_data);
          break;
        case Result: {
          if (!keys)
            throw StateError("no keys yet");
          auto piece = sign_without_modification(x.keys.sk, unsigned_data);
          handle_result(s, make_result(Name("/res/1"), {piece}, *keys, 10), x.cert, unsigned_data);
          break;
        }
        case Fail:
          fail(s, "abandoned");
          break;
        }
      }
      catch (const StateError&) {
        threw = true;
      }
      bool legal = before != SessionState::Failed && before != SessionState::Done &&
                   (op == expected || op == Fail);
      if (op == Fail)
        legal = before != SessionState::Done;
      CHECK_MESSAGE(threw == !legal, "op ", int(op), " in state ", to_string(before));
      if (threw) {
        CHECK(s.state == before);
        ++rejected;
      }
      else if (op != Fail) {
        ++expected;
      }
      if (s.state == SessionState::Done)
        ++completed;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("end-to-end job with all signers available")
{
  Scenario sc;
  auto unsigned_tbs_before = Scenario::firmware();
  auto r = sc.sign();

  CHECK(r.signers.size() == 3);
  CHECK(r.signed_data.sig_value.size() == 96);
  CHECK(r.siginfo.name == r.signed_data.sig_info.key_locator.name);
  CHECK(Name("/Site/maintenance/Alice/MPS/siginfo").is_prefix_of(r.siginfo.name));
  CHECK(decode_siginfo_content(r.siginfo.content).signers == r.signers);
  CHECK(sc.verify(r.signed_data).valid());

  // exactly two coordinator-initiated exchanges per available signer
  for (const auto& a : r.attempts) {
    CHECK(a.outcome == AttemptOutcome::Completed);
    CHECK(a.rtts == 2);
  }

  // every signer received byte-identical unsigned packets equal to what was signed
  auto tbs = tbs_bytes(r.signed_data);
  for (const auto& node : {"operatorX", "bob", "owner"}) {
    const auto& got = sc.daemon(node).received_parameters();
    REQUIRE(got.size() == 1);
    CHECK(tbs_bytes(got.front()) == tbs);
  }
  CHECK(sc.daemon("operatorY").received_parameters().empty());
}

TEST_CASE("fallback to an alternative QA operator")
{
  ScenarioOptions o;
  o.offline = {"operatorX"};
  Scenario sc(o);
  auto r = sc.sign();
  CHECK(std::count(r.signers.begin(), r.signers.end(), Name("/Mfr/QA/operatorY/KEY/1")) == 1);
  CHECK(std::count(r.signers.begin(), r.signers.end(), Name("/Mfr/QA/operatorX/KEY/1")) == 0);
  CHECK(sc.verify(r.signed_data).valid());

  const auto* x = attempt_for(r, "/Mfr/QA/operatorX/KEY/1");
  REQUIRE(x);
  CHECK(x->outcome == AttemptOutcome::Timeout);
  CHECK(x->rtts == 1); // noticed after the first Interest timed out
  CHECK(x->finished_ms - x->started_ms == CoordinatorOptions{}.request_timeout_ms);
  CHECK(attempt_for(r, "/Mfr/QA/operatorY/KEY/1")->rtts == 2);
}

TEST_CASE("signed bytes stay constant across substitutions")
{
  ScenarioOptions o;
  o.hooks["operatorX"] = auto_deny();
  Scenario sc(o);
  auto r = sc.sign();
  CHECK(attempt_for(r, "/Mfr/QA/operatorX/KEY/1")->outcome == AttemptOutcome::Denied);
  auto tbs = tbs_bytes(r.signed_data);
  const auto& x = sc.daemon("operatorX").received_parameters();
  const auto& y = sc.daemon("operatorY").received_parameters();
  REQUIRE(x.size() == 1);
  REQUIRE(y.size() == 1);
  CHECK(tbs_bytes(x.front()) == tbs);
  CHECK(tbs_bytes(y.front()) == tbs);
  CHECK(sc.verify(r.signed_data).valid());
}

TEST_CASE("a slot with no reachable candidate fails the job")
{
  ScenarioOptions o;
  o.offline = {"operatorX", "operatorY"};
  Scenario sc(o);
  try {
    sc.sign();
    FAIL("job should not complete");
  }
  catch (const JobFailed& e) {
    CHECK(e.requirement() == "/Mfr/QA/*/KEY/*");
    CHECK(e.attempts() == 2);
  }
}

TEST_CASE("a single unavailable signer fails after one timeout")
{
  ScenarioOptions o;
  o.offline = {"owner"};
  Scenario sc(o);
  auto start = sc.fabric.now_ms();
  CHECK_THROWS_AS(sc.sign(), JobFailed);
  CHECK(sc.fabric.now_ms() - start == CoordinatorOptions{}.request_timeout_ms);
}

TEST_CASE("results published under a third-party prefix")
{
  ScenarioOptions o;
  Name repo("/Repo/anon");
  for (const auto& node : {"operatorX", "operatorY", "bob", "owner"})
    o.publish_prefix[node] = repo;
  Scenario sc(o);
  auto r = sc.sign();
  CHECK(sc.verify(r.signed_data).valid());

  bool saw_result = false;
  for (const auto& rec : sc.fabric.trace()) {
    if (rec.wire.empty() || rec.wire[0] != tlv::type::Interest)
      continue;
    auto i = decode_interest(rec.wire);
    if (!repo.is_prefix_of(i.name))
      continue;
    saw_result = true;
    CHECK(i.name.size() == repo.size() + 1);
    for (const auto& [node, id] : sc.signers) {
      for (const auto& c : id.key_name.prefix(-2).components())
        CHECK(std::find(i.name.components().begin(), i.name.components().end(), c) == i.name.components().end());
    }
  }
  CHECK(saw_result);
}

TEST_CASE("deferred decisions are picked up by result retries")
{
  ScenarioOptions o;
  int calls = 0;
  o.hooks["owner"] = [&calls](const DataPacket&) -> Decision {
    if (calls++ == 0)
      return Defer{1000};
    return Approve{};
  };
  Scenario sc(o);
  auto r = sc.sign();
  CHECK(calls == 2);
  const auto* owner = attempt_for(r, "/Site/Owner/carol/KEY/1");
  CHECK(owner->outcome == AttemptOutcome::Completed);
  CHECK(owner->rtts == 3);
  CHECK(sc.verify(r.signed_data).valid());
}

TEST_CASE("policy refusals are reported as denials")
{
  Scenario sc;
  // the coordinator asks for a signature on data the signers' policy does not cover
  auto data = Scenario::firmware();
  data.name = Name("/Site/inverters/firmware/rollback");
  auto plan = schema::plan_signers(sc.policy.rules.front(), sc.known());
  CHECK_THROWS_AS(sc.coordinator->run_job(data, plan), JobFailed);
  CHECK(sc.daemon("operatorX").stats().denied == 1);
  CHECK(sc.daemon("operatorX").stats().signed_pieces == 0);
  CHECK_FALSE(sc.daemon("operatorX").policy_allows(data));
  CHECK(sc.daemon("operatorX").policy_allows(Scenario::firmware()));
}

TEST_CASE("requests from unknown coordinators are rejected with an ack")
{
  Scenario sc(manual());
  auto rogue_anchor = testing::make_anchor(Name("/Site/maintenance/KEY/999"));
  auto mallory = testing::make_issued(Name("/Site/maintenance/Mallory/KEY/1"), rogue_anchor);
  auto& x = sc.signer("operatorX");
  auto s = open_session(x.cert, Name("/Site/maintenance/Mallory"), sc.rng);
  auto req = build_request(s, {mallory.key_name, mallory.keys}, sc.fabric.now_ms(), sc.rng);
  auto ack = net::fetch(sc.face("alice"), req, 2000);
  REQUIRE(ack);
  handle_ack(s, *ack, x.cert);
  CHECK(s.state == SessionState::Failed);
  CHECK(s.status == StatusCode::RejectedIdentity);
  CHECK(sc.daemon("operatorX").stats().rejected == 1);
  CHECK(sc.daemon("operatorX").open_sessions() == 0);
}

TEST_CASE("busy signers say so")
{
  auto o = manual();
  o.max_sessions = 0;
  Scenario sc(o);
  ManualExchange ex(sc, "bob");
  auto ack = ex.send(ex.request());
  REQUIRE(ack);
  handle_ack(ex.session, *ack, ex.signer_cert);
  CHECK(ex.session.status == StatusCode::Busy);
  CHECK(ex.session.state == SessionState::Failed);
}

TEST_CASE("replayed and stale requests get no answer")
{
  Scenario sc(manual());
  auto& daemon = sc.daemon("bob");
  ManualExchange ex(sc, "bob");
  auto req = ex.request();
  auto wire = encode_interest(req);

  auto first = daemon.handle_request(decode_interest(wire));
  CHECK(first);
  for (int i = 0; i < 1000; ++i)
    CHECK_FALSE(daemon.handle_request(decode_interest(wire)));
  CHECK(daemon.stats().accepted == 1);
  CHECK(daemon.stats().dropped_replayed == 1000);
  CHECK(daemon.open_sessions() == 1);

  // the same request over the network is also ignored
  CHECK_FALSE(ex.send(decode_interest(wire)));

  // a fresh request whose timestamp is older than the grace window
  auto s = open_session(sc.signer("bob").cert, Name("/Site/maintenance/Alice"), sc.rng);
  auto old = build_request(s, sc.coordinator_identity(), sc.fabric.now_ms() - 60'001, sc.rng);
  CHECK_FALSE(daemon.handle_request(old));
  CHECK(daemon.stats().dropped_stale == 1);
}

TEST_CASE("tampered parameters end the session")
{
  Scenario sc(manual());
  ManualExchange ex(sc, "owner");
  auto ack = ex.send(ex.request());
  REQUIRE(ack);
  handle_ack(ex.session, *ack, ex.signer_cert);
  auto param = serve_parameter(ex.session, unsigned_firmware());
  param.content[param.content.size() / 2] ^= 0x01;
  ex.served[param.name] = param;
  sc.fabric.run_for(1000);
  CHECK(sc.daemon("owner").stats().param_failures == 1);
  CHECK(sc.daemon("owner").open_sessions() == 0);
  CHECK_FALSE(ex.send(result_interest(ex.session)));
}

TEST_CASE("results expire")
{
  Scenario sc(manual());
  ManualExchange ex(sc, "bob");
  auto piece = ex.run(unsigned_firmware());
  CHECK(crypto::bls_verify(sc.signer("bob").keys.pk, tbs_bytes(unsigned_firmware()), piece));
  CHECK(ex.send(result_interest(ex.session)));
  sc.fabric.run_for(SignerConfig::DefaultResultLifetimeMs);
  CHECK_FALSE(ex.send(result_interest(ex.session)));
}

TEST_CASE("nothing secret crosses the wire in plaintext")
{
  Scenario sc;
  auto r = sc.sign();
  auto transcript = sc.fabric.transcript();
  REQUIRE(!transcript.empty());

  auto unsigned_data = r.signed_data;
  unsigned_data.sig_value.clear();
  CHECK_FALSE(contains_subsequence(transcript, encode_data(unsigned_data)));
  CHECK_FALSE(contains_subsequence(transcript, r.signed_data.content));
  for (const auto& name : r.signers) {
    for (const auto& [node, id] : sc.signers) {
      if (id.key_name != name)
        continue;
      auto piece = sign_without_modification(id.keys.sk, unsigned_data);
      CHECK_FALSE(contains_subsequence(transcript, piece.bytes()));
    }
  }
  // the plaintext ack payload starts with the Accepted status element
  Buffer status;
  tlv::append_nni_tlv(status, type::Status, 0);
  tlv::append_nni_tlv(status, type::EtaMs, SignerConfig::DefaultEtaMs);
  CHECK_FALSE(contains_subsequence(transcript, status));
}
