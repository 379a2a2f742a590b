#pragma once

#include "mps/net/face.hpp"
#include "mps/net/nonce_cache.hpp"
#include "mps/rpc/session.hpp"
#include "mps/schema/coordinator.hpp"
#include "mps/schema/rule.hpp"

#include <functional>
#include <map>
#include <memory>
#include <thread>
#include <variant>

namespace mps::rpc {

/// Application decision about one unsigned packet.
struct Approve
{};
struct Deny
{};
/// Ask again after the given delay.
struct Defer
{
  uint64_t delay_ms = 0;
};
using Decision = std::variant<Approve, Deny, Defer>;
using DecisionHook = std::function<Decision(const DataPacket& unsigned_data)>;

DecisionHook auto_approve();
DecisionHook auto_deny();
/// Runs `command` through the shell with the unsigned packet's wire encoding
/// on stdin; exit status 0 approves, anything else denies. The command may
/// exit without reading its input, so the process should ignore SIGPIPE.
DecisionHook external_command(std::string command);

struct SignerConfig
{
  static constexpr uint64_t DefaultEtaMs = 500;
  static constexpr uint64_t DefaultResultLifetimeMs = 300'000;

  SignerConfig(SigningIdentity identity, Name prefix, schema::CoordinatorSchema coordinator_schema,
               schema::PolicySet policy)
    : identity(std::move(identity))
    , prefix(std::move(prefix))
    , coordinator_schema(std::move(coordinator_schema))
    , policy(std::move(policy))
  {}

  SigningIdentity identity;
  /// Head of every name this daemon registers; normally the identity.
  Name prefix;
  /// Where results are published; `<prefix>/MPS/result` when empty. A
  /// third-party prefix keeps result names unlinkable to the signer.
  std::optional<Name> publish_prefix;
  schema::CoordinatorSchema coordinator_schema;
  schema::PolicySet policy;
  /// Certificates of coordinators and intermediate issuers.
  schema::KnownSigners keychain = schema::KnownSigners::unchecked({});
  net::NonceCacheConfig nonce;
  DecisionHook hook = auto_approve();
  /// Run the hook on a worker thread (for hooks that block); needs a face whose post() is thread-safe.
  bool threaded_hook = false;
  uint64_t eta_ms = DefaultEtaMs;
  uint64_t result_lifetime_ms = DefaultResultLifetimeMs;
  uint64_t param_timeout_ms = 2000;
  unsigned param_attempts = 3;
  /// Open sessions above this get a Busy ack.
  size_t max_sessions = 64;
};

/// Counters for observing the daemon from tests and the CLI.
struct SignerStats
{
  uint64_t requests = 0;
  uint64_t dropped_stale = 0;
  uint64_t dropped_replayed = 0;
  uint64_t dropped_malformed = 0;
  uint64_t rejected = 0;
  uint64_t busy = 0;
  uint64_t accepted = 0;
  uint64_t param_failures = 0; ///< parameter never arrived or failed authentication
  uint64_t signed_pieces = 0;
  uint64_t denied = 0;
};

/// Answers signature requests on a face.
///
/// Registers only its own prefix. Requests arrive under
/// `<prefix>/MPS/request/...`; result names, which may lie under a
/// third-party publish prefix, reach the daemon through the forwarding hint
/// the coordinator attaches.
class SignerDaemon
{
public:
  enum class SessionState { Acked, ParamFetched, Published, Expired };

  SignerDaemon(net::Face& face, SignerConfig config, crypto::RandomSource& rng = crypto::system_random());
  ~SignerDaemon();

  SignerDaemon(const SignerDaemon&) = delete;
  SignerDaemon& operator=(const SignerDaemon&) = delete;

  const SignerConfig& config() const { return m_config; }
  const SignerStats& stats() const { return m_stats; }
  size_t open_sessions() const { return m_sessions.size(); }

  /// The ack for a request Interest, or nothing when the request is dropped.
  std::optional<DataPacket> handle_request(const InterestPacket& request);

  /// Whether this signer's own key may sign the packet under the policy.
  bool policy_allows(const DataPacket& unsigned_data) const;

  /// Every unsigned packet this daemon fetched, in order, as received.
  const std::vector<DataPacket>& received_parameters() const { return m_received; }

private:
  struct ServerSession
  {
    crypto::SessionKeys keys;
    Name para_name;
    Name result_name;
    std::optional<Name> forwarding_hint;
    uint64_t created_at = 0;
    SessionState state = SessionState::Acked;
  };

  std::optional<DataPacket> on_interest(const InterestPacket& interest);
  void fetch_parameter(const std::shared_ptr<ServerSession>& s, unsigned attempt);
  void handle_parameter(const std::shared_ptr<ServerSession>& s, const DataPacket& param);
  void decide(const std::shared_ptr<ServerSession>& s, DataPacket unsigned_data);
  void apply_decision(const std::shared_ptr<ServerSession>& s, DataPacket unsigned_data, Decision d);
  void publish_result(const std::shared_ptr<ServerSession>& s, const ResultOutcome& outcome);
  void drop(const std::shared_ptr<ServerSession>& s);

  net::Face& m_face;
  SignerConfig m_config;
  crypto::RandomSource& m_rng;
  net::NonceCache m_nonces;
  Name m_publish_prefix;
  SignerStats m_stats;
  std::map<Name, std::shared_ptr<ServerSession>> m_sessions; ///< by result name
  std::map<Name, DataPacket> m_results;
  std::vector<DataPacket> m_received;
  std::shared_ptr<bool> m_alive = std::make_shared<bool>(true);
  std::vector<std::jthread> m_workers;
};

} // namespace mps::rpc
