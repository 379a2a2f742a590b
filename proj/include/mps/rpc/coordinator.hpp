#pragma once

#include "mps/net/face.hpp"
#include "mps/rpc/session.hpp"
#include "mps/schema/plan.hpp"

#include <map>
#include <memory>

namespace mps::rpc {

/// A requirement of the plan ran out of candidates.
class JobFailed : public Error
{
public:
  JobFailed(const std::string& requirement, size_t attempts)
    : Error("no signer completed for " + requirement + " after " + std::to_string(attempts) + " attempt(s)")
    , m_requirement(requirement)
    , m_attempts(attempts)
  {}

  const std::string& requirement() const noexcept { return m_requirement; }
  size_t attempts() const noexcept { return m_attempts; }

private:
  std::string m_requirement;
  size_t m_attempts;
};

struct CoordinatorOptions
{
  uint64_t request_timeout_ms = 2000;
  uint64_t fetch_timeout_ms = 2000;
  unsigned fetch_attempts = 3;
  uint64_t retry_backoff_ms = 250; ///< doubled after each failed result fetch
  /// Sent to signers so they can reach the parameter; none if the coordinator prefix is routable.
  std::optional<Name> forwarding_hint;
};

/// How one attempt with one candidate signer ended.
enum class AttemptOutcome { Completed, Timeout, Rejected, Busy, Denied, BadPiece, BadAck, AuthFailure, NoCertificate };

std::string_view to_string(AttemptOutcome o);

struct AttemptReport
{
  std::string requirement;
  Name signer_key;
  AttemptOutcome outcome = AttemptOutcome::Timeout;
  uint32_t rtts = 0;
  uint64_t started_ms = 0;
  uint64_t finished_ms = 0;
};

struct JobResult
{
  DataPacket signed_data;
  DataPacket siginfo;
  std::vector<Name> signers; ///< sorted; exactly the contributors of the aggregate
  std::vector<AttemptReport> attempts;
};

/// Collects signature pieces for a Data packet and aggregates them.
///
/// Each plan requirement gets one lane per signer it needs. Lanes run
/// concurrently; a lane tries its candidates in order, skipping signers
/// already claimed by another lane, and moves on after a timeout, rejection,
/// refusal or faulty piece. The unsigned packet's key locator is a placeholder
/// fixed before any request goes out, so substitutions never change what the
/// signers sign. The coordinator serves parameters under
/// `<identity>/MPS/param` and SigInfo packets under `<identity>/MPS/siginfo`
/// for as long as it lives.
class Coordinator
{
public:
  Coordinator(net::Face& face, SigningIdentity identity, schema::KnownSigners known, crypto::RandomSource& rng,
              CoordinatorOptions options = {});
  ~Coordinator();

  Coordinator(const Coordinator&) = delete;
  Coordinator& operator=(const Coordinator&) = delete;

  const Name& prefix() const { return m_prefix; }

  Name make_placeholder() { return rpc::make_placeholder(m_prefix, m_rng); }

  /// Runs the plan to completion on the face's event loop. Sets the packet's
  /// SignatureInfo (BLS, key locator = a fresh placeholder) unless
  /// `placeholder` is given. Throws JobFailed.
  JobResult run_job(DataPacket data, const schema::SigningPlan& plan, std::optional<Name> placeholder = std::nullopt);

  /// Plans against the first rule of `policy` that applies to the data and is
  /// satisfiable with the known signers, then runs the job. Throws
  /// schema::UnsatisfiableError if no rule applies or can be satisfied.
  JobResult sign(DataPacket data, const schema::PolicySet& policy);

  /// Attempt reports of the most recent job, also after it failed.
  const std::vector<AttemptReport>& last_attempts() const { return m_last_attempts; }

  /// Makes a SigInfo packet fetchable under its name.
  void publish(const DataPacket& siginfo);

private:
  struct Job;
  struct Lane;
  struct Attempt;

  void start_lane(const std::shared_ptr<Job>& job, size_t lane);
  void finish_attempt(const std::shared_ptr<Job>& job, const std::shared_ptr<Attempt>& a, AttemptOutcome outcome);
  void fetch_result(const std::shared_ptr<Job>& job, const std::shared_ptr<Attempt>& a, unsigned attempt,
                    uint64_t backoff);
  void finalize(const std::shared_ptr<Job>& job);

  net::Face& m_face;
  SigningIdentity m_identity;
  Name m_prefix;
  schema::KnownSigners m_known;
  crypto::RandomSource& m_rng;
  CoordinatorOptions m_options;
  std::map<Name, DataPacket> m_parameters;
  std::map<Name, DataPacket> m_siginfo;
  std::vector<AttemptReport> m_last_attempts;
};

/// Builds the coordinator-signed SigInfo packet.
DataPacket make_siginfo(const Name& placeholder, const SigInfoContent& content, const SigningIdentity& coordinator);

} // namespace mps::rpc
