// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria (0 when all pass).

#include "mps/bench/bench.hpp"
#include "mps/bench/scenario.hpp"
#include "mps/crypto/aead.hpp"
#include "mps/crypto/hmac.hpp"
#include "mps/tlv.hpp"
#include "support/schema_oracle.hpp"
#include "support/threshold_sweep.hpp"

#include "blst.h"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace mps;
using bench::Scenario;
using bench::ScenarioOptions;

namespace {

struct Outcome
{
  bool pass = false;
  std::string detail;
};

/// Collects failed expectations of one criterion.
class Checks
{
public:
  void expect(bool ok, const std::string& what)
  {
    ++m_total;
    if (!ok)
      m_failures.push_back(what);
  }

  Outcome outcome(const std::string& summary) const
  {
    if (m_failures.empty())
      return {true, summary};
    std::string detail = std::to_string(m_failures.size()) + "/" + std::to_string(m_total) + " checks failed: ";
    for (size_t i = 0; i < m_failures.size() && i < 3; ++i)
      detail += (i ? "; " : "") + m_failures[i];
    return {false, detail};
  }

private:
  size_t m_total = 0;
  std::vector<std::string> m_failures;
};

double
seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DataPacket
without_signature(DataPacket d)
{
  d.sig_value.clear();
  return d;
}

std::vector<crypto::BlsSignature>
pieces_for(const Scenario& sc, const std::vector<Name>& signers, const DataPacket& unsigned_data)
{
  std::vector<crypto::BlsSignature> out;
  for (const auto& name : signers) {
    for (const auto& [node, id] : sc.signers) {
      if (id.key_name == name)
        out.push_back(rpc::sign_without_modification(id.keys.sk, unsigned_data));
    }
  }
  return out;
}

// 1. Aggregate signatures are 96 bytes and public keys 48 bytes for any signer count.
Outcome
size_invariants()
{
  auto start = std::chrono::steady_clock::now();
  Checks c;
  Buffer message{'f', 'i', 'r', 'm', 'w', 'a', 'r', 'e'};
  for (size_t n : {1, 2, 3, 8, 16}) {
    std::vector<crypto::BlsSignature> sigs;
    std::vector<crypto::BlsPublicKey> pks;
    for (size_t i = 0; i < n; ++i) {
      auto kp = crypto::bls_keygen(crypto::sha256(as_bytes("size signer " + std::to_string(i))));
      c.expect(kp.pk.bytes().size() == 48, "pk of signer " + std::to_string(i) + " is not 48 bytes");
      sigs.push_back(crypto::bls_sign(kp.sk, message));
      pks.push_back(kp.pk);
    }
    auto agg = crypto::bls_aggregate_sigs(sigs);
    auto agg_pk = crypto::bls_aggregate_pks(pks);
    c.expect(agg.bytes().size() == 96, "aggregate at n=" + std::to_string(n) + " is not 96 bytes");
    c.expect(agg_pk.bytes().size() == 48, "aggregate pk at n=" + std::to_string(n) + " is not 48 bytes");
    c.expect(crypto::bls_verify(agg_pk, message, agg), "aggregate at n=" + std::to_string(n) + " does not verify");
  }
  Scenario sc;
  auto r = sc.sign();
  c.expect(r.signed_data.sig_value.size() == 96, "signed packet SignatureValue is not 96 bytes");
  double t = seconds_since(start);
  c.expect(t < 5, "runtime exceeds 5 s");
  return c.outcome("n in {1,2,3,8,16}: sig 96 B, pk 48 B; " + std::to_string(t).substr(0, 4) + " s");
}

// 2. All-of example end to end on a 3-signer fabric; dropping any piece invalidates.
Outcome
end_to_end_all_of()
{
  auto start = std::chrono::steady_clock::now();
  Checks c;
  Scenario sc;
  auto r = sc.sign();
  c.expect(r.signers.size() == 3, "expected three signers");
  auto verdict = sc.verify(r.signed_data);
  c.expect(verdict.valid(), "verifier says " + std::string(verify::to_string(verdict.failure)));

  auto unsigned_data = without_signature(r.signed_data);
  auto pieces = pieces_for(sc, r.signers, unsigned_data);
  c.expect(pieces.size() == 3, "could not rebuild the pieces");
  auto known = sc.known();
  for (size_t drop = 0; drop < pieces.size(); ++drop) {
    std::vector<crypto::BlsSignature> rest;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (i != drop)
        rest.push_back(pieces[i]);
    }
    auto partial = unsigned_data;
    auto agg = crypto::bls_aggregate_sigs(rest);
    partial.sig_value.assign(agg.bytes().begin(), agg.bytes().end());
    c.expect(!verify::verify_with_siginfo(partial, r.siginfo, sc.policy, known).valid(),
             "valid without the piece of " + r.signers[drop].to_uri());
  }

  Scenario again;
  auto r2 = again.sign();
  c.expect(encode_data(r2.signed_data) == encode_data(r.signed_data) && encode_data(r2.siginfo) == encode_data(r.siginfo),
           "a second run produced different packets");
  double t = seconds_since(start);
  c.expect(t < 10, "runtime exceeds 10 s");
  return c.outcome("Valid; each of 3 single-piece removals Invalid; deterministic; " + std::to_string(t).substr(0, 4) +
                   " s");
}

// 3. verify_signer_set agrees with the brute-force assignment oracle everywhere in the sweep.
Outcome
threshold_oracle_equivalence()
{
  auto start = std::chrono::steady_clock::now();
  Checks c;
  Name data("/data/x");
  std::string first;
  auto stats = testing::threshold_sweep(
    2, 4, 4,
    [&](const schema::SchemaRule& rule, const std::vector<Name>& signers) {
      schema::PolicySet policy{{rule}};
      return schema::verify_signer_set(policy, data, signers);
    },
    [&](const schema::SchemaRule& rule, const std::vector<Name>& signers) {
      if (first.empty())
        first = schema::print_rule(rule) + " with " + std::to_string(signers.size()) + " signers";
    });
  c.expect(stats.disagreements == 0, std::to_string(stats.disagreements) + " disagreements, first: " + first);
  c.expect(stats.accepted > 0 && stats.accepted < stats.checks, "sweep is degenerate");
  double t = seconds_since(start);
  c.expect(t < 60, "runtime exceeds 60 s");
  return c.outcome(std::to_string(stats.rules) + " rules x 64 subsets = " + std::to_string(stats.checks) +
                   " checks, 0 disagreements; " + std::to_string(t).substr(0, 4) + " s");
}

// 4. Two round trips with an available signer; one timed-out Interest with an unavailable one.
Outcome
two_rtt()
{
  Checks c;
  Scenario sc;
  auto r = sc.sign();
  for (const auto& a : r.attempts)
    c.expect(a.rtts == 2, a.signer_key.to_uri() + " took " + std::to_string(a.rtts) + " RTTs");

  auto rows = bench::bench_rtt();
  c.expect(rows[0].rtts == 2, "available scenario took " + std::to_string(rows[0].rtts));
  c.expect(rows[1].rtts == 1 && !rows[1].completed, "unavailable scenario took " + std::to_string(rows[1].rtts));
  c.expect(rows[1].virtual_ms == rpc::CoordinatorOptions{}.request_timeout_ms,
           "unavailable signer noticed after " + std::to_string(rows[1].virtual_ms) + " ms");

  ScenarioOptions o;
  o.offline = {"operatorX"};
  Scenario down(o);
  auto plan = schema::plan_signers(down.policy.rules.front(), down.known());
  plan.slots.front().candidates = {down.signer("operatorX").key_name};
  auto start = down.fabric.now_ms();
  try {
    down.coordinator->run_job(Scenario::firmware(), plan);
    c.expect(false, "job with an unavailable signer completed");
  }
  catch (const rpc::JobFailed&) {
  }
  const auto& attempts = down.coordinator->last_attempts();
  for (const auto& a : attempts) {
    if (a.signer_key == down.signer("operatorX").key_name) {
      c.expect(a.outcome == rpc::AttemptOutcome::Timeout && a.rtts == 1, "unavailable signer: not one timeout");
      c.expect(a.finished_ms - start == rpc::CoordinatorOptions{}.request_timeout_ms, "timeout not after one Interest");
    }
  }
  auto again = bench::bench_rtt();
  for (size_t i = 0; i < rows.size(); ++i)
    c.expect(again[i].rtts == rows[i].rtts && again[i].virtual_ms == rows[i].virtual_ms, "not deterministic");
  return c.outcome("available: 2 RTTs per signer; unavailable: 1 Interest, failed at " +
                   std::to_string(rows[1].virtual_ms) + " ms (one timeout)");
}

// 5. operatorX offline, operatorY online: the job completes through Y.
Outcome
fallback()
{
  Checks c;
  ScenarioOptions o;
  o.offline = {"operatorX"};
  Scenario sc(o);
  auto r = sc.sign();
  auto transcript = sc.fabric.transcript();
  Name x = sc.signer("operatorX").key_name;
  Name y = sc.signer("operatorY").key_name;
  auto listed = rpc::decode_siginfo_content(r.siginfo.content).signers;
  c.expect(std::find(listed.begin(), listed.end(), y) != listed.end(), "SigInfo does not list operatorY");
  c.expect(std::find(listed.begin(), listed.end(), x) == listed.end(), "SigInfo lists operatorX");
  c.expect(sc.verify(r.signed_data).valid(), "verification failed");

  Scenario again(o);
  auto r2 = again.sign();
  c.expect(encode_data(r2.signed_data) == encode_data(r.signed_data), "not deterministic");
  c.expect(again.fabric.transcript() == transcript, "wire transcript differs between runs");
  return c.outcome("SigInfo lists " + y.to_uri() + "; Valid; deterministic");
}

// 6. Replayed requests get no session and no answer; stale requests are dropped.
Outcome
replay_resistance()
{
  Checks c;
  Scenario sc;
  auto r = sc.sign();
  std::vector<InterestPacket> recorded;
  for (const auto& rec : sc.fabric.trace()) {
    if (rec.wire.empty() || rec.wire[0] != tlv::type::Interest)
      continue;
    auto i = decode_interest(rec.wire);
    for (const auto& [node, id] : sc.signers) {
      if (schema::request_prefix(id.key_name.prefix(-2)).is_prefix_of(i.name))
        recorded.push_back(i);
    }
  }
  c.expect(recorded.size() == 3, "expected three recorded requests, found " + std::to_string(recorded.size()));

  std::map<std::string, uint64_t> accepted_before;
  for (const auto& [node, d] : sc.daemons)
    accepted_before[node] = d->stats().accepted;

  // 1000 replays in shuffled order with duplicates, all in flight at once from an attacker node
  auto& attacker = sc.fabric.add_node("mallory");
  std::mt19937_64 gen(99);
  size_t answers = 0, timeouts = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& req = recorded[gen() % recorded.size()];
    attacker.express_interest(
      decode_interest(encode_interest(req)), 1000, [&](const DataPacket&) { ++answers; }, [&] { ++timeouts; });
  }
  sc.fabric.run_for(1500);
  c.expect(answers == 0, std::to_string(answers) + " replays were answered");
  c.expect(timeouts == 1000, "not every replay timed out");
  uint64_t replayed = 0;
  for (const auto& [node, d] : sc.daemons) {
    c.expect(d->stats().accepted == accepted_before[node], node + " accepted a replay");
    replayed += d->stats().dropped_replayed;
  }
  c.expect(replayed == 1000, "daemons saw " + std::to_string(replayed) + " replays");
  c.expect(sc.fabric.now_ms() - r.attempts.front().started_ms < net::NonceCacheConfig{}.grace_window_ms,
           "replays fell outside the grace window");

  // a fresh, correctly signed request that is older than the window
  auto& bob = sc.daemon("bob");
  auto s = rpc::open_session(sc.signer("bob").cert, Name("/Site/maintenance/Alice"), sc.rng);
  auto stale = rpc::build_request(s, sc.coordinator_identity(),
                                  sc.fabric.now_ms() - net::NonceCacheConfig{}.grace_window_ms - 1, sc.rng);
  auto stale_before = bob.stats().dropped_stale;
  c.expect(!bob.handle_request(stale), "stale request was answered");
  c.expect(bob.stats().dropped_stale == stale_before + 1, "stale request not counted as stale");
  return c.outcome("0 of 1000 replays answered or accepted; stale request dropped");
}

// 7. No secret appears in plaintext anywhere on the wire during a job.
Outcome
confidentiality()
{
  Checks c;
  Scenario sc;
  auto r = sc.sign();
  auto transcript = sc.fabric.transcript();
  auto unsigned_data = without_signature(r.signed_data);
  c.expect(!contains_subsequence(transcript, encode_data(unsigned_data)), "unsigned packet encoding found");
  c.expect(!contains_subsequence(transcript, r.signed_data.content), "unsigned content found");
  size_t n = 0;
  for (const auto& piece : pieces_for(sc, r.signers, unsigned_data)) {
    c.expect(!contains_subsequence(transcript, piece.bytes()), "a signature piece found");
    ++n;
  }
  c.expect(n == 3, "expected three pieces");
  Buffer status;
  tlv::append_nni_tlv(status, rpc::type::Status, static_cast<uint64_t>(rpc::StatusCode::Accepted));
  tlv::append_nni_tlv(status, rpc::type::EtaMs, rpc::SignerConfig::DefaultEtaMs);
  c.expect(!contains_subsequence(transcript, status), "status/ETA plaintext found");
  return c.outcome("searched " + std::to_string(transcript.size()) + " wire bytes: 0 matches");
}

// 8. Aggregation grows linearly with n; sign and verify stay flat across n and data size.
Outcome
scaling_trends()
{
  auto start = std::chrono::steady_clock::now();
  Checks c;
  auto report = bench::bench_crypto();
  using bench::CryptoReport;
  double r2 = report.aggregate_fit.r2;
  double sign_n = CryptoReport::spread(report.by_signers, "sign");
  double verify_n = CryptoReport::spread(report.by_signers, "verify");
  double sign_s = CryptoReport::spread(report.by_size, "sign");
  double agg_s = CryptoReport::spread(report.by_size, "aggregate");
  double verify_s = CryptoReport::spread(report.by_size, "verify");
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
  };
  c.expect(r2 >= 0.9, "aggregate R^2 = " + fmt(r2));
  c.expect(report.aggregate_fit.slope > 0, "aggregate time does not grow with n");
  c.expect(sign_n < 2, "sign varies " + fmt(sign_n) + "x across n");
  c.expect(verify_n < 2, "verify varies " + fmt(verify_n) + "x across n");
  c.expect(sign_s < 2, "sign varies " + fmt(sign_s) + "x across sizes");
  c.expect(agg_s < 2, "aggregate varies " + fmt(agg_s) + "x across sizes");
  c.expect(verify_s < 2, "verify varies " + fmt(verify_s) + "x across sizes");
  double t = seconds_since(start);
  c.expect(t < 120, "runtime exceeds 120 s");
  return c.outcome("aggregate R^2 " + fmt(r2) + "; spread over n: sign " + fmt(sign_n) + "x, verify " + fmt(verify_n) +
                   "x; over sizes: sign " + fmt(sign_s) + "x, aggregate " + fmt(agg_s) + "x, verify " +
                   fmt(verify_s) + "x; " + fmt(t) + " s");
}

// 9. BLS against the consensus-spec vectors; AEAD, HMAC, HKDF and X25519 against their RFC vectors.
Outcome
crypto_conformance()
{
  Checks c;
  auto load = [](const char* file) {
    std::ifstream in(std::string(MPS_TEST_DATA_DIR) + "/" + file);
    if (!in)
      throw Error(std::string("cannot open ") + file);
    return nlohmann::json::parse(in);
  };
  auto hex = [](const nlohmann::json& j) { return from_hex(j.get<std::string>()); };
  size_t n = 0;
  auto bls = load("bls_vectors.json");
  for (const auto& v : bls["keygen"]) {
    auto kp = crypto::bls_keygen(hex(v["ikm"]));
    c.expect(to_hex(kp.sk.to_bytes()) == v["sk"] && to_hex(kp.pk.bytes()) == v["pk"], "keygen vector");
    ++n;
  }
  for (const auto& v : bls["sign"]) {
    auto sk = crypto::BlsSecretKey::from_bytes(hex(v["sk"]));
    c.expect(to_hex(crypto::bls_sign(sk, hex(v["message"])).bytes()) == v["signature"], "sign vector");
    ++n;
  }
  for (const auto& v : bls["verify"]) {
    bool ok = false;
    try {
      ok = crypto::bls_verify(crypto::BlsPublicKey::from_bytes(hex(v["pk"])), hex(v["message"]),
                              crypto::BlsSignature::from_bytes(hex(v["signature"])));
    }
    catch (const crypto::MalformedPoint&) {
    }
    c.expect(ok == v["output"].get<bool>(), "verify vector");
    ++n;
  }
  for (const auto& v : bls["aggregate"]) {
    std::vector<crypto::BlsSignature> sigs;
    for (const auto& s : v["input"])
      sigs.push_back(crypto::BlsSignature::from_bytes(hex(s)));
    c.expect(to_hex(crypto::bls_aggregate_sigs(sigs).bytes()) == v["output"], "aggregate vector");
    ++n;
  }
  for (const auto& v : bls["fast_aggregate_verify"]) {
    std::vector<crypto::BlsPublicKey> pks;
    for (const auto& p : v["pks"])
      pks.push_back(crypto::BlsPublicKey::from_bytes(hex(p)));
    auto sig = crypto::BlsSignature::from_bytes(hex(v["signature"]));
    c.expect(crypto::bls_fast_aggregate_verify(pks, hex(v["message"]), sig) == v["output"].get<bool>(),
             "fast aggregate verify vector");
    ++n;
  }
  for (const auto& v : bls["pop"]) {
    auto pk = crypto::BlsPublicKey::from_bytes(hex(v["pk"]));
    crypto::ProofOfPossession pop{crypto::BlsSignature::from_bytes(hex(v["proof"]))};
    c.expect(crypto::pop_verify(pk, pop) == v["output"].get<bool>(), "POP vector");
    ++n;
  }

  auto rfc = load("rfc_vectors.json");
  {
    const auto& v = rfc["chacha20poly1305"];
    crypto::AeadNonce nonce;
    auto nb = hex(v["nonce"]);
    std::copy(nb.begin(), nb.end(), nonce.begin());
    auto ct = crypto::aead_seal(hex(v["key"]), nonce, hex(v["aad"]), hex(v["plaintext"]));
    c.expect(to_hex(ct) == v["ciphertext"].get<std::string>() + v["tag"].get<std::string>(), "AEAD vector");
    c.expect(crypto::aead_open(hex(v["key"]), nonce, hex(v["aad"]), ct) == hex(v["plaintext"]), "AEAD open");
    ++n;
  }
  for (const auto& v : rfc["hmac_sha256"]) {
    c.expect(to_hex(crypto::hmac_tag(hex(v["key"]), hex(v["data"]))) == v["mac"], "HMAC vector");
    ++n;
  }
  for (const auto& v : rfc["hkdf_sha256"]) {
    c.expect(to_hex(crypto::hkdf_sha256(hex(v["salt"]), hex(v["ikm"]), hex(v["info"]), v["length"].get<size_t>())) ==
               v["okm"],
             "HKDF vector");
    ++n;
  }
  {
    const auto& v = rfc["x25519"];
    crypto::X25519Key a{}, b{};
    auto ab = hex(v["alice_sk"]), bb = hex(v["bob_sk"]);
    std::copy(ab.begin(), ab.end(), a.begin());
    std::copy(bb.begin(), bb.end(), b.begin());
    auto alice = crypto::dh_from_secret(a);
    auto bob = crypto::dh_from_secret(b);
    c.expect(to_hex(crypto::x25519(alice.esk, bob.epk)) == v["shared"], "X25519 vector");
    ++n;
  }
  return c.outcome(std::to_string(n) + " vectors, 100% pass");
}

// 10. A rogue key (attacker key minus victims' keys) without a valid POP is refused.
Outcome
rogue_key_defense()
{
  Checks c;
  Scenario sc;
  const auto& x = sc.signer("operatorX");
  const auto& bob = sc.signer("bob");
  auto attacker = crypto::bls_keygen(crypto::sha256(as_bytes(std::string_view("attacker secret"))));

  // pk_rogue = pk_attacker - pk_X - pk_bob, so pk_X + pk_bob + pk_rogue = pk_attacker
  auto to_point = [](const crypto::BlsPublicKey& pk) {
    blst_p1_affine a;
    blst_p1_uncompress(&a, pk.bytes().data());
    blst_p1 p;
    blst_p1_from_affine(&p, &a);
    return p;
  };
  blst_p1 rogue = to_point(attacker.pk);
  for (const auto* victim : {&x, &bob}) {
    blst_p1 neg = to_point(victim->keys.pk);
    blst_p1_cneg(&neg, true);
    blst_p1_add_or_double(&rogue, &rogue, &neg);
  }
  std::array<uint8_t, 48> rogue_bytes;
  blst_p1_compress(rogue_bytes.data(), &rogue);
  auto rogue_pk = crypto::BlsPublicKey::from_bytes(rogue_bytes);

  Name rogue_name("/Site/Owner/mallory/KEY/1");
  // the attacker cannot prove possession of the rogue key; it offers its own proof instead
  auto rogue_cert = schema::issue_certificate({rogue_name, rogue_pk, attacker.pop, std::nullopt, std::nullopt},
                                              rogue_name, attacker.sk);

  DataPacket data = Scenario::firmware("malicious firmware");
  Name placeholder("/Site/maintenance/Alice/MPS/siginfo/rogue");
  data.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{placeholder}, std::nullopt, std::nullopt};
  auto forged = crypto::bls_sign(attacker.sk, tbs_bytes(data));
  data.sig_value.assign(forged.bytes().begin(), forged.bytes().end());
  std::vector<Name> listed{x.key_name, bob.key_name, rogue_name};
  std::sort(listed.begin(), listed.end());
  auto siginfo = rpc::make_siginfo(placeholder, {listed, std::nullopt}, sc.coordinator_identity());

  // without proofs of possession the forgery would pass the aggregate check
  std::vector<crypto::BlsPublicKey> pks{x.keys.pk, bob.keys.pk, rogue_pk};
  c.expect(crypto::bls_verify(crypto::bls_aggregate_pks(pks), tbs_bytes(data), forged),
           "rogue-key construction is wrong");

  std::vector<schema::Certificate> certs = sc.known().certificates();
  certs.push_back(rogue_cert);
  bool refused = false;
  try {
    schema::KnownSigners store(certs);
  }
  catch (const schema::BadPop&) {
    refused = true;
  }
  c.expect(refused, "store accepted the rogue certificate");

  auto file = std::filesystem::temp_directory_path() / ("mps-rogue-" + std::to_string(::getpid()) + ".tlv");
  {
    std::ofstream out(file, std::ios::binary);
    auto wire = schema::KnownSigners::unchecked(certs).to_wire();
    out.write(reinterpret_cast<const char*>(wire.data()), static_cast<std::streamsize>(wire.size()));
  }
  bool load_refused = false;
  try {
    schema::load_known_signers(file);
  }
  catch (const schema::BadPop& e) {
    load_refused = std::string(e.what()).find(rogue_name.to_uri()) != std::string::npos;
  }
  std::filesystem::remove(file);
  c.expect(load_refused, "signers file with the rogue certificate loaded");

  auto verdict = verify::verify_with_siginfo(data, siginfo, sc.policy, schema::KnownSigners::unchecked(certs));
  c.expect(verdict.failure == verify::Failure::BadPop,
           "verifier said " + std::string(verify::to_string(verdict.failure)));
  return c.outcome("rejected at load (BadPop) and at verification (bad-pop)");
}

} // namespace

int
main()
{
  struct Criterion
  {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
    {1, "size invariants", size_invariants},
    {2, "end-to-end all-of", end_to_end_all_of},
    {3, "threshold oracle equivalence", threshold_oracle_equivalence},
    {4, "2-RTT", two_rtt},
    {5, "fallback resilience", fallback},
    {6, "replay resistance", replay_resistance},
    {7, "confidentiality transcript", confidentiality},
    {8, "scaling trends", scaling_trends},
    {9, "crypto conformance", crypto_conformance},
    {10, "rogue-key defense", rogue_key_defense},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    }
    catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %2d  %-30s %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed;
}
