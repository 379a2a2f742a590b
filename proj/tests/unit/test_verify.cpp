#include "mps/verify/verifier.hpp"
#include "support/scenario.hpp"
#include "support/schema_oracle.hpp"

#include "doctest.h"

using namespace mps;
using namespace mps::verify;
using mps::testing::Scenario;
using mps::testing::TestIdentity;

namespace {

/// Signs `data` with exactly the given identities and builds a matching
/// coordinator-signed SigInfo listing `listed`.
struct Forged
{
  DataPacket data;
  DataPacket siginfo;
};

Forged
forge(DataPacket data, const std::vector<const TestIdentity*>& contributors, const std::vector<Name>& listed,
      const TestIdentity& coordinator)
{
  Name placeholder("/Site/maintenance/Alice/MPS/siginfo/forged");
  data.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{placeholder}, std::nullopt, std::nullopt};
  data.sig_value.clear();
  std::vector<crypto::BlsSignature> pieces;
  for (const auto* id : contributors)
    pieces.push_back(crypto::bls_sign(id->keys.sk, tbs_bytes(data)));
  if (!pieces.empty()) {
    auto agg = crypto::bls_aggregate_sigs(pieces);
    data.sig_value.assign(agg.bytes().begin(), agg.bytes().end());
  }
  auto siginfo = rpc::make_siginfo(placeholder, rpc::SigInfoContent{listed, std::nullopt},
                                   {coordinator.key_name, coordinator.keys});
  return {std::move(data), std::move(siginfo)};
}

} // namespace

TEST_CASE("aggregate public keys")
{
  Scenario sc;
  const auto& x = sc.signer("operatorX");
  const auto& bob = sc.signer("bob");
  const auto& owner = sc.signer("owner");
  auto known = sc.known();

  std::vector<Name> one{x.key_name};
  CHECK(aggregate_public_keys_for(one, known) == x.keys.pk);

  std::vector<Name> abc{x.key_name, bob.key_name, owner.key_name};
  std::vector<Name> cab{owner.key_name, x.key_name, bob.key_name};
  CHECK(aggregate_public_keys_for(abc, known) == aggregate_public_keys_for(cab, known));

  std::vector<Name> unknown{x.key_name, Name("/Nobody/KEY/1")};
  try {
    aggregate_public_keys_for(unknown, known);
    FAIL("expected UnknownSigner");
  }
  catch (const UnknownSigner& e) {
    CHECK(e.key_name() == Name("/Nobody/KEY/1"));
  }
}

TEST_CASE("verification of a completed job and its failure modes")
{
  Scenario sc;
  auto r = sc.sign();
  auto known = sc.known();
  REQUIRE(verify_with_siginfo(r.signed_data, r.siginfo, sc.policy, known).valid());

  SUBCASE("content byte flipped after signing")
  {
    auto bad = r.signed_data;
    bad.content[0] ^= 0x01;
    CHECK(verify_with_siginfo(bad, r.siginfo, sc.policy, known).failure == Failure::BadAggregate);
  }
  SUBCASE("each piece removed before aggregation")
  {
    auto unsigned_data = r.signed_data;
    unsigned_data.sig_value.clear();
    for (size_t drop = 0; drop < r.signers.size(); ++drop) {
      std::vector<crypto::BlsSignature> pieces;
      for (size_t i = 0; i < r.signers.size(); ++i) {
        if (i == drop)
          continue;
        for (const auto& [node, id] : sc.signers) {
          if (id.key_name == r.signers[i])
            pieces.push_back(crypto::bls_sign(id.keys.sk, tbs_bytes(unsigned_data)));
        }
      }
      auto partial = unsigned_data;
      auto agg = crypto::bls_aggregate_sigs(pieces);
      partial.sig_value.assign(agg.bytes().begin(), agg.bytes().end());
      CHECK(verify_with_siginfo(partial, r.siginfo, sc.policy, known).failure == Failure::BadAggregate);
    }
  }
  SUBCASE("SigInfo listing two of three required signers")
  {
    std::vector<Name> two(r.signers.begin(), r.signers.begin() + 2);
    auto siginfo = rpc::make_siginfo(r.siginfo.name, {two, std::nullopt}, sc.coordinator_identity());
    auto v = verify_with_siginfo(r.signed_data, siginfo, sc.policy, known);
    CHECK(v.failure == Failure::SchemaUnsatisfied);
  }
  SUBCASE("SigInfo not signed by a known coordinator")
  {
    auto mallory = testing::make_anchor(Name("/Site/maintenance/Mallory/KEY/1"));
    auto siginfo = rpc::make_siginfo(r.siginfo.name, rpc::decode_siginfo_content(r.siginfo.content),
                                     {mallory.key_name, mallory.keys});
    CHECK(verify_with_siginfo(r.signed_data, siginfo, sc.policy, known).failure == Failure::UnknownCoordinator);
  }
  SUBCASE("SigInfo signature broken")
  {
    auto siginfo = r.siginfo;
    siginfo.content.back() ^= 0x01;
    CHECK(verify_with_siginfo(r.signed_data, siginfo, sc.policy, known).failure == Failure::BadSigInfoSignature);
  }
  SUBCASE("SigInfo under another name")
  {
    auto siginfo = r.siginfo;
    siginfo.name = Name("/Site/maintenance/Alice/MPS/siginfo/other");
    rpc::bls_sign_data(siginfo, sc.alice.key_name, sc.alice.keys.sk);
    CHECK(verify_with_siginfo(r.signed_data, siginfo, sc.policy, known).failure == Failure::SigInfoMismatch);
  }
  SUBCASE("piece replaced by a signature from an unlisted key")
  {
    auto unsigned_data = r.signed_data;
    unsigned_data.sig_value.clear();
    std::vector<crypto::BlsSignature> pieces;
    for (const auto& node : {"operatorY", "bob", "owner"}) // Y signed, X is listed
      pieces.push_back(crypto::bls_sign(sc.signer(node).keys.sk, tbs_bytes(unsigned_data)));
    auto swapped = unsigned_data;
    auto agg = crypto::bls_aggregate_sigs(pieces);
    swapped.sig_value.assign(agg.bytes().begin(), agg.bytes().end());
    CHECK(verify_with_siginfo(swapped, r.siginfo, sc.policy, known).failure == Failure::BadAggregate);
  }
  SUBCASE("signer certificate missing")
  {
    std::vector<schema::Certificate> certs;
    for (const auto& c : known.certificates()) {
      if (c.key_name != r.signers.front())
        certs.push_back(c);
    }
    CHECK(verify_with_siginfo(r.signed_data, r.siginfo, sc.policy, schema::KnownSigners(certs)).failure ==
          Failure::UnknownSigner);
  }
  SUBCASE("not a multisigned packet")
  {
    auto plain = Scenario::firmware();
    CHECK(verify_with_siginfo(plain, r.siginfo, sc.policy, known).failure == Failure::NotMultiSigned);
  }
}

TEST_CASE("online verification fetches the SigInfo")
{
  Scenario sc;
  auto r = sc.sign();
  CHECK(sc.verify(r.signed_data).valid());

  auto orphan = r.signed_data;
  orphan.sig_info.key_locator.name = Name("/Site/maintenance/Alice/MPS/siginfo/missing");
  auto start = sc.fabric.now_ms();
  CHECK_THROWS_AS(sc.verify(orphan), FetchTimeout);
  CHECK(sc.fabric.now_ms() - start == 4 * VerifierOptions{}.fetch_timeout_ms);
}

TEST_CASE("verifier accepts exactly the schema-qualified signer sets")
{
  // Six signers across three organisations; every subset is tried as both
  // the listed set and the contributing set, then with one piece missing.
  auto anchor = testing::make_anchor(Name("/Site/maintenance/KEY/123"));
  auto alice = testing::make_issued(Name("/Site/maintenance/Alice/KEY/1"), anchor);
  std::vector<TestIdentity> ids;
  for (auto uri : {"/Mfr/QA/operatorX/KEY/1", "/Mfr/QA/operatorY/KEY/1", "/Site/operation/bob/KEY/1",
                   "/Site/operation/dave/KEY/1", "/Site/Owner/carol/KEY/1", "/Other/eve/KEY/1"})
    ids.push_back(testing::make_issued(Name(uri), anchor));
  std::vector<schema::Certificate> certs{alice.cert};
  for (const auto& id : ids)
    certs.push_back(id.cert);
  schema::KnownSigners known(certs);

  const char* rules[] = {
    mps::testing::FirmwareRule.data(),
    R"(data-profile /Site/inverters/firmware/update
       at-least-num 2
       from { /Mfr/QA/*/KEY/*  /Site/operation/*/KEY/*  /Site/Owner/*/KEY/* })",
    R"(data-profile /Site/inverters/firmware/update
       all-of { /Site/Owner/*/KEY/* }
       at-least-num 1
       from { /Mfr/QA/*/KEY/* })",
  };
  size_t accepted = 0, checked = 0;
  for (const char* text : rules) {
    auto rule = schema::parse_rule(text);
    schema::PolicySet policy{{rule}};
    for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
      std::vector<const TestIdentity*> subset;
      std::vector<Name> names;
      for (size_t i = 0; i < ids.size(); ++i) {
        if (mask & (1u << i)) {
          subset.push_back(&ids[i]);
          names.push_back(ids[i].key_name);
        }
      }
      bool expected = mps::testing::oracle_rule_accepts(rule, names);
      auto f = forge(Scenario::firmware(), subset, names, alice);
      auto v = verify_with_siginfo(f.data, f.siginfo, policy, known);
      CHECK_MESSAGE(v.valid() == expected, "rule ", text, " mask ", mask);
      accepted += v.valid();
      ++checked;

      if (subset.size() > 1) {
        auto fewer = subset;
        fewer.pop_back();
        auto g = forge(Scenario::firmware(), fewer, names, alice);
        CHECK_FALSE(verify_with_siginfo(g.data, g.siginfo, policy, known).valid());
      }
    }
  }
  CHECK(checked == 3 * 63);
  CHECK(accepted > 0);
}

TEST_CASE("rogue keys without a proof of possession are refused")
{
  Scenario sc;
  auto r = sc.sign();
  // a certificate whose POP belongs to another key
  auto known = sc.known();
  std::vector<schema::Certificate> certs = known.certificates();
  const auto& owner = sc.signer("owner");
  auto other = testing::test_keys("someone else");
  auto fake = schema::issue_certificate({owner.key_name, owner.keys.pk, other.pop, std::nullopt, std::nullopt},
                                        sc.site_anchor.key_name, sc.site_anchor.keys.sk);
  for (auto& c : certs) {
    if (c.key_name == owner.key_name)
      c = fake;
  }
  CHECK_THROWS_AS(schema::KnownSigners{certs}, schema::BadPop);
  auto v = verify_with_siginfo(r.signed_data, r.siginfo, sc.policy, schema::KnownSigners::unchecked(certs));
  CHECK(v.failure == Failure::BadPop);
}
