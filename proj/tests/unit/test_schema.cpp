#include "mps/schema/coordinator.hpp"
#include "mps/schema/plan.hpp"
#include "mps/schema/rule.hpp"

#include "doctest.h"
#include "support/keys.hpp"
#include "support/threshold_sweep.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace mps;
using namespace mps::schema;
using mps::testing::make_anchor;
using mps::testing::make_issued;

namespace {

// The firmware-update rule: one QA operator, one site operator and one owner must all sign.
constexpr std::string_view FirmwareRule = R"(
Data profile: /Site/inverters/firmware/update
All-of {     /Mfr/QA/*/KEY/*
             /Site/operation/*/KEY/*
             /Site/Owner/*/KEY/*      }
)";

// Any two of the three organisations.
constexpr std::string_view TwoOfThreeRule = R"(
Data profile: /example/data/*/*
At-least-num 2
From {      /Site/operation/*/KEY/*
            /Mfr/QA/*/KEY/*
            /Site/Owner/*/KEY/*     }
)";

std::vector<Name>
names(std::initializer_list<const char*> uris)
{
  std::vector<Name> out;
  for (auto u : uris)
    out.emplace_back(u);
  return out;
}

struct TempDir
{
  std::filesystem::path path;

  TempDir()
  {
    path = std::filesystem::temp_directory_path() / ("mps-schema-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  void
  write(const std::string& file, std::string_view text) const
  {
    std::ofstream(path / file) << text;
  }
};

} // namespace

TEST_SUITE("schema")
{

TEST_CASE("pattern matching")
{
  auto p = NamePattern::parse("/Mfr/QA/*/KEY/*");
  CHECK(p.matches(Name("/Mfr/QA/operatorX/KEY/7")));
  CHECK_FALSE(p.matches(Name("/Mfr/QA/KEY/7")));
  CHECK_FALSE(p.matches(Name("/Mfr/QB/operatorX/KEY/7")));
  CHECK_FALSE(NamePattern::parse("/a/*").matches(Name("/a/b/c")));
  CHECK(NamePattern::parse("/a/*").matches(Name("/a/b")));
  CHECK(NamePattern::parse("/a/<operator>").matches(Name("/a/b")));
  CHECK(NamePattern::parse("/").matches(Name()));
}

TEST_CASE("pattern text form")
{
  CHECK(NamePattern::parse("/a/%2A").to_string() == "/a/%2A");
  CHECK_FALSE(NamePattern::parse("/a/%2A").matches(Name("/a/b")));
  CHECK(NamePattern::parse("/a/%2A").matches(Name("/a/%2A")));
  CHECK(NamePattern::parse("/x/<>/y").to_string() == "/x/*/y");
  CHECK_THROWS_AS(NamePattern::parse("/Mfr/QA*/KEY/*"), Error);
  CHECK_THROWS_AS(NamePattern::parse("a/b"), Error);
  CHECK_THROWS_AS(NamePattern::parse("/a//b"), Error);
}

TEST_CASE("all-of example parses")
{
  auto rule = parse_rule(FirmwareRule);
  CHECK(rule.data_profile.to_string() == "/Site/inverters/firmware/update");
  REQUIRE(rule.all_of.size() == 3);
  CHECK(rule.all_of[0].to_string() == "/Mfr/QA/*/KEY/*");
  CHECK(rule.all_of[2].to_string() == "/Site/Owner/*/KEY/*");
  CHECK_FALSE(rule.threshold);
}

TEST_CASE("threshold example parses")
{
  auto rule = parse_rule(TwoOfThreeRule);
  REQUIRE(rule.threshold);
  CHECK(rule.threshold->k == 2);
  CHECK(rule.threshold->from.size() == 3);
  CHECK(rule.all_of.empty());
}

TEST_CASE("the glued wildcard of the original listing is a syntax error")
{
  std::string text = "Data profile: /Site/inverters/firmware/update\nAll-of { /Mfr/QA*/KEY/*\n}\n";
  try {
    parse_rule(text);
    FAIL("expected SyntaxError");
  }
  catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 10);
  }
}

TEST_CASE("syntax errors carry positions")
{
  CHECK_THROWS_AS(parse_rule("all-of { /a }"), SyntaxError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nall-of { /b"), SyntaxError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nat-least-num two\nfrom { /b }"), SyntaxError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nall-of /b"), SyntaxError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nbogus { /b }"), SyntaxError);
  try {
    parse_rule("data-profile /a\n  all-of {\n    b\n  }\n");
    FAIL("expected SyntaxError");
  }
  catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("semantic errors")
{
  CHECK_THROWS_AS(parse_rule("data-profile /a"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nall-of { }"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nat-least-num 0\nfrom { /b }"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nat-least-num 1\nfrom { }"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nat-least-num 1"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nfrom { /b }"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nall-of { /b }\nall-of { /c }"), SemanticError);
  CHECK_THROWS_AS(parse_rule("data-profile /a\nat-least-num 1\nat-least-num 2\nfrom { /b }"), SemanticError);
}

TEST_CASE("unreachable thresholds warn but parse")
{
  std::vector<std::string> warnings;
  auto rules = parse_rules("data-profile /a\nat-least-num 3\nfrom { /b/KEY/1 /c/KEY/1 }", &warnings);
  CHECK(rules.size() == 1);
  CHECK(warnings.size() == 1);
  warnings.clear();
  parse_rules("data-profile /a\nat-least-num 3\nfrom { /b/*/KEY/1 }", &warnings);
  CHECK(warnings.empty());
}

TEST_CASE("keywords are case-insensitive, comments ignored, several rules per file")
{
  auto rules = parse_rules(R"(# two rules
DATA-PROFILE /x/*   # trailing comment
ALL-OF { /k/*/KEY/* }
data-profile /y
at-least-num 1 from { /k/*/KEY/* }
)");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].all_of.size() == 1);
  CHECK(rules[1].threshold->k == 1);
  CHECK(parse_rules("  # nothing here\n").empty());
}

TEST_CASE("printing is canonical")
{
  auto rule = parse_rule(TwoOfThreeRule);
  CHECK(print_rule(rule) == "data-profile /example/data/*/*\n"
                            "at-least-num 2\n"
                            "from {\n"
                            "  /Site/operation/*/KEY/*\n"
                            "  /Mfr/QA/*/KEY/*\n"
                            "  /Site/Owner/*/KEY/*\n"
                            "}\n");
}

TEST_CASE("property: print(parse(print(r))) is a fixpoint")
{
  auto pool = mps::testing::sweep_patterns();
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<SchemaRule> rules;
    size_t count = 1 + rng() % 3;
    for (size_t r = 0; r < count; ++r) {
      SchemaRule rule;
      rule.data_profile = pool[rng() % pool.size()];
      for (size_t i = rng() % 3; i > 0; --i)
        rule.all_of.push_back(pool[rng() % pool.size()]);
      if (rule.all_of.empty() || rng() % 2) {
        Threshold t{1 + rng() % 4, {}};
        for (size_t i = 1 + rng() % 4; i > 0; --i)
          t.from.push_back(pool[rng() % pool.size()]);
        rule.threshold = t;
      }
      rules.push_back(rule);
    }
    auto text = print_rules(rules);
    auto parsed = parse_rules(text);
    CHECK(parsed == rules);
    CHECK(print_rules(parsed) == text);
  }
}

TEST_CASE("all-of example evaluation")
{
  PolicySet policy{{parse_rule(FirmwareRule)}};
  Name data("/Site/inverters/firmware/update");
  auto full = names({"/Mfr/QA/operatorX/KEY/1", "/Site/operation/bob/KEY/2", "/Site/Owner/o/KEY/3"});
  CHECK(verify_signer_set(policy, data, full));
  auto missing = names({"/Mfr/QA/operatorX/KEY/1", "/Site/operation/bob/KEY/2"});
  CHECK_FALSE(verify_signer_set(policy, data, missing));
  CHECK_FALSE(verify_signer_set(policy, Name("/Site/inverters/firmware/other"), full));
  // duplicates collapse
  auto dup = names({"/Mfr/QA/operatorX/KEY/1", "/Mfr/QA/operatorX/KEY/1", "/Site/Owner/o/KEY/3"});
  CHECK_FALSE(verify_signer_set(policy, data, dup));
}

TEST_CASE("two-of-three example evaluation")
{
  PolicySet policy{{parse_rule(TwoOfThreeRule)}};
  Name data("/example/data/x/y");
  CHECK(verify_signer_set(policy, data, names({"/Site/operation/bob/KEY/1", "/Site/Owner/o/KEY/2"})));
  for (auto single : {"/Site/operation/bob/KEY/1", "/Site/Owner/o/KEY/2", "/Mfr/QA/x/KEY/3"})
    CHECK_FALSE(verify_signer_set(policy, data, names({single})));
  CHECK_FALSE(verify_signer_set(policy, data, names({"/Site/operation/bob/KEY/1", "/Other/x/KEY/2"})));
}

TEST_CASE("a signer used by all-of does not count toward the threshold")
{
  auto rule = parse_rule("data-profile /d\nall-of { /A/*/KEY/* }\nat-least-num 1\nfrom { /A/*/KEY/* }");
  CHECK_FALSE(rule_accepts(rule, names({"/A/x/KEY/1"})));
  CHECK(rule_accepts(rule, names({"/A/x/KEY/1", "/A/y/KEY/1"})));
}

TEST_CASE("matching picks the assignment a greedy choice would miss")
{
  // /A/a could fill either pattern; only giving it to /*/a leaves /A/* for /A/b.
  auto rule = parse_rule("data-profile /d\nall-of { /*/a/KEY/* /A/*/KEY/* }");
  CHECK(rule_accepts(rule, names({"/A/a/KEY/1", "/A/b/KEY/1"})));
  CHECK_FALSE(rule_accepts(rule, names({"/A/a/KEY/1"})));
}

TEST_CASE("exhaustive agreement with the brute-force oracle (reduced space)")
{
  auto stats = mps::testing::threshold_sweep(2, 2, 3, [](const SchemaRule& r, const std::vector<Name>& s) {
    return rule_accepts(r, s);
  });
  CHECK(stats.disagreements == 0);
  CHECK(stats.accepted > 0);
  CHECK(stats.accepted < stats.checks);
  MESSAGE(stats.checks << " instances checked");
}

TEST_CASE("property: OR semantics and monotonicity")
{
  auto pool = mps::testing::sweep_patterns();
  auto signers = mps::testing::sweep_signers();
  std::mt19937_64 rng(11);
  Name data("/data/x");
  auto random_rule = [&] {
    SchemaRule rule;
    rule.data_profile = NamePattern::parse(rng() % 4 ? "/data/*" : "/other/*");
    for (size_t i = rng() % 3; i > 0; --i)
      rule.all_of.push_back(pool[rng() % pool.size()]);
    if (rule.all_of.empty() || rng() % 2) {
      Threshold t{1 + rng() % 3, {}};
      for (size_t i = 1 + rng() % 3; i > 0; --i)
        t.from.push_back(pool[rng() % pool.size()]);
      rule.threshold = t;
    }
    return rule;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    PolicySet p1{{random_rule()}}, p2{{random_rule(), random_rule()}};
    PolicySet both = p1;
    both.rules.insert(both.rules.end(), p2.rules.begin(), p2.rules.end());
    std::vector<Name> chosen;
    for (const auto& s : signers) {
      if (rng() % 2)
        chosen.push_back(s);
    }
    bool r1 = verify_signer_set(p1, data, chosen);
    bool r2 = verify_signer_set(p2, data, chosen);
    CHECK(verify_signer_set(both, data, chosen) == (r1 || r2));

    if (r1) {
      auto more = chosen;
      more.push_back(signers[rng() % signers.size()]);
      more.push_back(Name("/Z/z/KEY/9"));
      CHECK(verify_signer_set(p1, data, more));
    }
  }
  CHECK_FALSE(verify_signer_set(PolicySet{}, data, signers));
}

TEST_CASE("certificates round-trip and verify")
{
  auto anchor = make_anchor(Name("/Site/maintenance/KEY/123"));
  auto alice = make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor, Name("/routes/alice"));
  auto decoded = decode_certificate(decode_data(encode_data(alice.cert.packet)));
  CHECK(decoded.key_name == alice.key_name);
  CHECK(decoded.pk == alice.keys.pk);
  CHECK(decoded.route_prefix == Name("/routes/alice"));
  CHECK(decoded.identity() == Name("/Site/maintenance/Alice"));
  CHECK(decoded.routable_prefix() == Name("/routes/alice"));
  CHECK(decoded.issuer() == anchor.key_name);
  CHECK(verify_certificate_signature(decoded, anchor.keys.pk));
  CHECK_FALSE(verify_certificate_signature(decoded, alice.keys.pk));
  CHECK(anchor.cert.self_signed());
  CHECK(anchor.cert.routable_prefix() == Name("/Site/maintenance"));

  auto kp = mps::testing::test_keys("x");
  CHECK_THROWS_AS(issue_certificate({Name("/no/key/component"), kp.pk, kp.pop, {}, {}}, Name("/i/KEY/1"), kp.sk),
                  BadCertificate);
}

TEST_CASE("validity period survives encoding")
{
  auto kp = mps::testing::test_keys("v");
  auto cert = issue_certificate({Name("/v/KEY/1"), kp.pk, kp.pop, std::nullopt, ValidityPeriod{100, 200}},
                                Name("/v/KEY/1"), kp.sk);
  auto decoded = decode_certificate(decode_data(encode_data(cert.packet)));
  REQUIRE(decoded.validity);
  CHECK(decoded.validity->contains(150));
  CHECK_FALSE(decoded.validity->contains(201));
}

TEST_CASE("known signers reject bad proofs of possession and duplicates")
{
  auto anchor = make_anchor(Name("/Org/KEY/1"));
  auto a = make_issued(Name("/Org/a/KEY/1"), anchor);
  auto b = make_issued(Name("/Org/b/KEY/1"), anchor);
  KnownSigners good({a.cert, b.cert});
  CHECK(good.size() == 2);
  CHECK(good.find(b.key_name)->pk == b.keys.pk);
  CHECK(good.find(Name("/Org/c/KEY/1")) == nullptr);

  auto wire = good.to_wire();
  auto reloaded = KnownSigners::from_wire(wire);
  CHECK(reloaded.certificates().size() == 2);
  CHECK(reloaded.matching(NamePattern::parse("/Org/*/KEY/*")) == names({"/Org/a/KEY/1", "/Org/b/KEY/1"}));

  // b's certificate carrying a's proof
  auto forged = issue_certificate({b.key_name, b.keys.pk, a.keys.pop, {}, {}}, anchor.key_name, anchor.keys.sk);
  try {
    KnownSigners({a.cert, forged});
    FAIL("expected BadPop");
  }
  catch (const BadPop& e) {
    CHECK(e.key_name() == b.key_name);
  }
  Buffer bad_wire = encode_data(a.cert.packet);
  append(bad_wire, encode_data(forged.packet));
  CHECK_THROWS_AS(KnownSigners::from_wire(bad_wire), BadPop);
  CHECK(KnownSigners::unchecked({a.cert, forged}).size() == 2);

  CHECK_THROWS_AS(KnownSigners({a.cert, a.cert}), Error);
}

TEST_CASE("policy directories")
{
  TempDir dir;
  CHECK(load_policy_dir(dir.path).rules.empty());

  dir.write("10-owner.schema", "data-profile /fw/*\nall-of { /Owner/*/KEY/* }\n");
  dir.write("20-qa.schema", "data-profile /fw/*\nall-of { /QA/*/KEY/* }\n");
  dir.write("notes.txt", "not a schema");
  auto policy = load_policy_dir(dir.path);
  REQUIRE(policy.rules.size() == 2);
  CHECK(policy.rules[0].all_of[0].to_string() == "/Owner/*/KEY/*");
  CHECK(verify_signer_set(policy, Name("/fw/1"), names({"/QA/q/KEY/1"})));
  CHECK(verify_signer_set(policy, Name("/fw/1"), names({"/Owner/o/KEY/1"})));
  CHECK_FALSE(verify_signer_set(policy, Name("/fw/1"), names({"/Other/o/KEY/1"})));

  dir.write("30-broken.schema", "data-profile /fw/*\nall-of { oops }\n");
  try {
    load_policy_dir(dir.path);
    FAIL("expected SyntaxError");
  }
  catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).starts_with("30-broken.schema:2:"));
  }
  CHECK_THROWS_AS(load_policy_dir(dir.path / "missing"), Error);
}

TEST_CASE("signing plans")
{
  auto anchor = make_anchor(Name("/Site/KEY/0"));
  std::vector<Certificate> certs;
  for (auto uri : {"/Mfr/QA/operatorX/KEY/1", "/Mfr/QA/operatorY/KEY/1", "/Site/operation/bob/KEY/1",
                   "/Site/operation/carol/KEY/1", "/Site/Owner/o/KEY/1", "/Site/Owner/p/KEY/1"})
    certs.push_back(make_issued(Name(uri), anchor).cert);
  KnownSigners known(certs);

  auto plan = plan_signers(parse_rule(FirmwareRule), known);
  REQUIRE(plan.slots.size() == 3);
  for (const auto& slot : plan.slots) {
    CHECK(slot.needed == 1);
    CHECK(slot.candidates.size() == 2);
  }
  CHECK(plan.slots[0].candidates == names({"/Mfr/QA/operatorX/KEY/1", "/Mfr/QA/operatorY/KEY/1"}));

  auto tplan = plan_signers(parse_rule("data-profile /d\nat-least-num 2\nfrom { /Site/operation/*/KEY/* "
                                       "/Mfr/QA/operatorX/KEY/1 }"),
                            known);
  REQUIRE(tplan.slots.size() == 1);
  CHECK(tplan.slots[0].needed == 2);
  CHECK(tplan.slots[0].candidates.size() == 3);

  try {
    plan_signers(parse_rule("data-profile /d\nall-of { /Mfr/QA/*/KEY/* /Nobody/*/KEY/* }"), known);
    FAIL("expected UnsatisfiableError");
  }
  catch (const UnsatisfiableError& e) {
    CHECK(e.requirement() == "/Nobody/*/KEY/*");
  }
  CHECK_THROWS_AS(plan_signers(parse_rule("data-profile /d\nat-least-num 3\nfrom { /Site/Owner/*/KEY/* }"), known),
                  UnsatisfiableError);
  // each pattern has a candidate, but three patterns compete for two signers
  CHECK_THROWS_AS(plan_signers(parse_rule("data-profile /d\nall-of { /Site/Owner/*/KEY/* /Site/Owner/*/KEY/* "
                                          "/Site/Owner/*/KEY/* }"),
                               known),
                  UnsatisfiableError);
}

TEST_CASE("coordinator verification")
{
  auto anchor = make_anchor(Name("/Site/maintenance/KEY/123"));
  auto alice = make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor);
  auto rogue_anchor = make_anchor(Name("/Elsewhere/KEY/1"));
  auto mallory = make_issued(Name("/Site/maintenance/Mallory/KEY/1"), rogue_anchor);
  KnownSigners keychain({alice.cert, mallory.cert, rogue_anchor.cert});

  Name signer_prefix("/Mfr/QA/operatorX");
  auto cs = CoordinatorSchema::make(signer_prefix, "/<SignerPrefix>/MPS/request/Site/maintenance/<operator>/<>",
                                    "/Site/maintenance/<operator>/KEY/<>", {anchor.cert});
  CHECK(cs.request_pattern.to_string() == "/Mfr/QA/operatorX/MPS/request/Site/maintenance/*/*");

  auto make_request = [&](const mps::testing::TestIdentity& who, const Name& coordinator_id) {
    InterestPacket i;
    i.name = request_prefix(signer_prefix);
    i.name.append(coordinator_id).append("r4nd0m");
    i.app_params = {1, 2, 3};
    SignatureInfo info;
    info.key_locator.name = who.key_name;
    info.timestamp = 1'700'000'000'000;
    info.nonce = InterestNonce{1, 2, 3, 4, 5, 6, 7, 8};
    i.sig_info = info;
    auto sig = crypto::bls_sign(who.keys.sk, tbs_bytes(i));
    i.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
    return i;
  };

  std::string reason;
  auto good = make_request(alice, Name("/Site/maintenance/Alice"));
  CHECK(verify_coordinator(cs, good, keychain, std::nullopt, &reason));
  CHECK(good.name.to_uri() == "/Mfr/QA/operatorX/MPS/request/Site/maintenance/Alice/r4nd0m");

  // signed by a key that chains to a different anchor
  CHECK_FALSE(verify_coordinator(cs, make_request(mallory, Name("/Site/maintenance/Mallory")), keychain,
                                 std::nullopt, &reason));
  CHECK(reason.find("un-anchored") != std::string::npos);

  // request claims to come from someone other than the signing key
  CHECK_FALSE(verify_coordinator(cs, make_request(alice, Name("/Site/maintenance/Bob")), keychain));

  // key outside the key pattern
  auto outsider = make_issued(Name("/Site/operation/Eve/KEY/1"), anchor);
  KnownSigners with_outsider({alice.cert, outsider.cert});
  auto cs_loose = CoordinatorSchema::make(signer_prefix, "/<SignerPrefix>/MPS/request/Site/*/*/*",
                                          "/Site/maintenance/*/KEY/*", {anchor.cert});
  CHECK_FALSE(verify_coordinator(cs_loose, make_request(outsider, Name("/Site/operation/Eve")), with_outsider,
                                 std::nullopt, &reason));
  CHECK(reason.find("does not match") != std::string::npos);

  // tampered parameters
  auto tampered = good;
  tampered.app_params[0] ^= 1;
  CHECK_FALSE(verify_coordinator(cs, tampered, keychain));

  // unknown certificate
  CHECK_FALSE(verify_coordinator(cs, good, KnownSigners{}, std::nullopt, &reason));

  // addressed to a different signer
  auto cs_other = CoordinatorSchema::make(Name("/Mfr/QA/operatorY"), "/<SignerPrefix>/MPS/request/Site/maintenance/*/*",
                                          "/Site/maintenance/*/KEY/*", {anchor.cert});
  CHECK_FALSE(verify_coordinator(cs_other, good, keychain));
}

TEST_CASE("certificate chains are bounded and validity-checked")
{
  auto anchor = make_anchor(Name("/Site/maintenance/KEY/123"));
  std::vector<mps::testing::TestIdentity> chain{anchor};
  std::vector<Certificate> certs;
  for (int i = 1; i <= 5; ++i) {
    chain.push_back(make_issued(Name("/Site/maintenance/L" + std::to_string(i) + "/KEY/1"), chain.back()));
    certs.push_back(chain.back().cert);
  }
  KnownSigners keychain(certs);
  Name signer_prefix("/S");
  auto cs = CoordinatorSchema::make(signer_prefix, "/<SignerPrefix>/MPS/request/Site/maintenance/*/*",
                                    "/Site/maintenance/*/KEY/*", {anchor.cert});
  auto request_from = [&](size_t level) {
    const auto& who = chain[level];
    InterestPacket i;
    i.name = request_prefix(signer_prefix).append(who.key_name.prefix(-2)).append("n");
    SignatureInfo info;
    info.key_locator.name = who.key_name;
    i.sig_info = info;
    auto sig = crypto::bls_sign(who.keys.sk, tbs_bytes(i));
    i.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
    return i;
  };
  for (size_t level = 1; level <= 4; ++level)
    CHECK(verify_coordinator(cs, request_from(level), keychain));
  CHECK_FALSE(verify_coordinator(cs, request_from(5), keychain));

  auto kp = mps::testing::test_keys("/Site/maintenance/T/KEY/1");
  auto timed = issue_certificate({Name("/Site/maintenance/T/KEY/1"), kp.pk, kp.pop, {}, ValidityPeriod{1000, 2000}},
                                 anchor.key_name, anchor.keys.sk);
  KnownSigners timed_chain({timed});
  InterestPacket i;
  i.name = request_prefix(signer_prefix).append(Name("/Site/maintenance/T")).append("n");
  SignatureInfo info;
  info.key_locator.name = timed.key_name;
  i.sig_info = info;
  auto sig = crypto::bls_sign(kp.sk, tbs_bytes(i));
  i.sig_value.assign(sig.bytes().begin(), sig.bytes().end());
  CHECK(verify_coordinator(cs, i, timed_chain, 1500));
  CHECK_FALSE(verify_coordinator(cs, i, timed_chain, 2500));
}

} // TEST_SUITE

TEST_CASE("certificate validity period wire form")
{
  // published in docs/wire.md
  auto kp = crypto::bls_keygen(Buffer(32, 7));
  schema::CertificateFields f{Name("/A/KEY/1"), kp.pk, kp.pop, std::nullopt,
                              schema::ValidityPeriod{1700000000000, 1800000000000}};
  auto cert = schema::issue_certificate(f, f.key_name, kp.sk);
  CHECK(to_hex(cert.packet.content).find("731474080000018bcfe568007508000001a3185c5000") != std::string::npos);
}
