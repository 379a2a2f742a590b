#pragma once

#include "mps/crypto/hash.hpp"
#include "mps/net/sim.hpp"
#include "mps/rpc/coordinator.hpp"
#include "mps/rpc/signer.hpp"
#include "mps/verify/verifier.hpp"

#include <memory>
#include <set>

namespace mps::bench {

/// A named key pair and its certificate.
struct Identity
{
  Name key_name;
  crypto::BlsKeyPair keys;
  schema::Certificate cert;
};

/// Reproducible identity; the key seed is SHA-256 of the key name.
Identity make_identity(const Name& key_name, const Identity* issuer = nullptr);

/// The firmware-update rule: one QA operator, one site operator and one owner.
inline constexpr std::string_view FirmwareRule = R"(
Data profile: /Site/inverters/firmware/update
All-of {     /Mfr/QA/*/KEY/*
             /Site/operation/*/KEY/*
             /Site/Owner/*/KEY/*      }
)";

inline constexpr std::string_view CoordinatorRequestPattern =
  "/<SignerPrefix>/MPS/request/Site/maintenance/<operator>/<>";
inline constexpr std::string_view CoordinatorKeyPattern = "/Site/maintenance/<operator>/KEY/<>";

struct ScenarioOptions
{
  /// Seed, links and offline nodes; node names are those used below plus "alice" and "verifier".
  net::FabricConfig fabric{.rng_seed = 7};
  std::set<std::string> offline;
  /// Signers (by node name) that publish results under a third-party prefix.
  std::map<std::string, Name> publish_prefix;
  std::map<std::string, rpc::DecisionHook> hooks;
  std::string rules = std::string(FirmwareRule);
  /// Without a Coordinator object, the caller drives the exchange by hand from node "alice".
  bool with_coordinator = true;
  size_t max_sessions = 64;
};

/// Maintenance operator Alice coordinates signatures for a firmware update
/// from two QA operators (X and Y, either suffices), a site operator and the
/// site owner, all on one simulated fabric.
struct Scenario
{
  Identity maintenance_anchor = make_identity(Name("/Site/maintenance/KEY/123"));
  Identity mfr_anchor = make_identity(Name("/Mfr/KEY/1"));
  Identity site_anchor = make_identity(Name("/Site/KEY/1"));
  Identity alice = make_identity(Name("/Site/maintenance/Alice/KEY/1"), &maintenance_anchor);
  std::map<std::string, Identity> signers{
    {"operatorX", make_identity(Name("/Mfr/QA/operatorX/KEY/1"), &mfr_anchor)},
    {"operatorY", make_identity(Name("/Mfr/QA/operatorY/KEY/1"), &mfr_anchor)},
    {"bob", make_identity(Name("/Site/operation/bob/KEY/1"), &site_anchor)},
    {"owner", make_identity(Name("/Site/Owner/carol/KEY/1"), &site_anchor)},
  };

  ScenarioOptions options;
  schema::PolicySet policy;
  net::SimFabric fabric;
  crypto::DeterministicRandom rng;
  std::map<std::string, std::unique_ptr<rpc::SignerDaemon>> daemons;
  std::unique_ptr<rpc::Coordinator> coordinator;

  explicit Scenario(ScenarioOptions opts = {})
    : options(std::move(opts))
    , policy{schema::parse_rules(options.rules)}
    , fabric(options.fabric)
    , rng(options.fabric.rng_seed)
  {
    for (const auto& [node, id] : signers) {
      Name prefix = id.key_name.prefix(-2);
      rpc::SignerConfig config({id.key_name, id.keys}, prefix,
                               schema::CoordinatorSchema::make(prefix, CoordinatorRequestPattern,
                                                               CoordinatorKeyPattern, {maintenance_anchor.cert}),
                               policy);
      if (auto it = options.publish_prefix.find(node); it != options.publish_prefix.end())
        config.publish_prefix = it->second;
      config.keychain = schema::KnownSigners({alice.cert});
      if (auto it = options.hooks.find(node); it != options.hooks.end())
        config.hook = it->second;
      config.max_sessions = options.max_sessions;
      daemons[node] = std::make_unique<rpc::SignerDaemon>(fabric.add_node(node), std::move(config), rng);
    }
    for (const auto& node : options.offline)
      fabric.set_online(node, false);
    fabric.add_node("alice");
    if (options.with_coordinator)
      coordinator = std::make_unique<rpc::Coordinator>(face("alice"), coordinator_identity(), known(), rng);
    fabric.add_node("verifier");
  }

  rpc::SigningIdentity coordinator_identity() const { return {alice.key_name, alice.keys}; }

  /// Certificates of every signer and of the coordinator.
  schema::KnownSigners known() const
  {
    std::vector<schema::Certificate> certs{alice.cert};
    for (const auto& [node, id] : signers)
      certs.push_back(id.cert);
    return schema::KnownSigners(std::move(certs));
  }

  const Identity& signer(const std::string& node) const { return signers.at(node); }
  rpc::SignerDaemon& daemon(const std::string& node) { return *daemons.at(node); }
  net::Face& face(const std::string& node) { return fabric.face(node); }

  static DataPacket firmware(std::string_view image = "inverter firmware 2.1.7")
  {
    DataPacket d;
    d.name = Name("/Site/inverters/firmware/update");
    d.content.assign(image.begin(), image.end());
    d.freshness_ms = 3'600'000;
    return d;
  }

  rpc::JobResult sign(DataPacket data = firmware()) { return coordinator->sign(std::move(data), policy); }

  verify::Verdict verify(const DataPacket& signed_data)
  {
    return verify::verify_multisigned(signed_data, policy, known(), face("verifier"));
  }
};

} // namespace mps::bench
