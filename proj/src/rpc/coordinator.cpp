#include "mps/rpc/coordinator.hpp"
#include "mps/crypto/aead.hpp"

#include <algorithm>
#include <set>

namespace mps::rpc {

struct Coordinator::Lane
{
  size_t slot = 0;
  size_t next = 0; ///< next index into the slot's candidate list
  bool done = false;
};

struct Coordinator::Attempt
{
  size_t lane = 0;
  RpcSession session;
  const schema::Certificate* cert = nullptr;
  size_t report = 0;
  bool finished = false;
};

struct Coordinator::Job
{
  DataPacket unsigned_data;
  Buffer tbs;
  schema::SigningPlan plan;
  std::vector<Lane> lanes;
  std::set<Name> claimed;
  std::map<Name, crypto::BlsSignature> collected;
  std::vector<AttemptReport> attempts;
  std::vector<Name> parameter_names;
  size_t lanes_done = 0;
  bool finished = false;
  std::optional<JobFailed> failure;
  std::optional<JobResult> result;
};

std::string_view
to_string(AttemptOutcome o)
{
  switch (o) {
  case AttemptOutcome::Completed:
    return "completed";
  case AttemptOutcome::Timeout:
    return "timeout";
  case AttemptOutcome::Rejected:
    return "rejected";
  case AttemptOutcome::Busy:
    return "busy";
  case AttemptOutcome::Denied:
    return "denied";
  case AttemptOutcome::BadPiece:
    return "bad-piece";
  case AttemptOutcome::BadAck:
    return "bad-ack";
  case AttemptOutcome::AuthFailure:
    return "auth-failure";
  case AttemptOutcome::NoCertificate:
    return "no-certificate";
  }
  return "?";
}

DataPacket
make_siginfo(const Name& placeholder, const SigInfoContent& content, const SigningIdentity& coordinator)
{
  DataPacket siginfo;
  siginfo.name = placeholder;
  siginfo.content_type = ContentType::SigInfo;
  siginfo.content = encode_siginfo_content(content);
  bls_sign_data(siginfo, coordinator.key_name, coordinator.keys.sk);
  return siginfo;
}

Coordinator::Coordinator(net::Face& face, SigningIdentity identity, schema::KnownSigners known,
                         crypto::RandomSource& rng, CoordinatorOptions options)
  : m_face(face)
  , m_identity(std::move(identity))
  , m_prefix(m_identity.identity())
  , m_known(std::move(known))
  , m_rng(rng)
  , m_options(std::move(options))
{
  auto serve_from = [](std::map<Name, DataPacket>& table) {
    return [&table](const InterestPacket& i) -> std::optional<DataPacket> {
      auto it = table.find(i.name);
      if (it == table.end())
        return std::nullopt;
      return it->second;
    };
  };
  m_face.register_prefix(Name(m_prefix).append("MPS").append("param"), serve_from(m_parameters));
  m_face.register_prefix(Name(m_prefix).append("MPS").append("siginfo"), serve_from(m_siginfo));
}

Coordinator::~Coordinator()
{
  if (!m_face.is_closed()) {
    m_face.unregister_prefix(Name(m_prefix).append("MPS").append("param"));
    m_face.unregister_prefix(Name(m_prefix).append("MPS").append("siginfo"));
  }
}

void
Coordinator::publish(const DataPacket& siginfo)
{
  m_siginfo[siginfo.name] = siginfo;
}

JobResult
Coordinator::sign(DataPacket data, const schema::PolicySet& policy)
{
  std::optional<schema::UnsatisfiableError> last;
  for (const auto& rule : policy.rules) {
    if (!rule.applies_to(data.name))
      continue;
    try {
      auto plan = schema::plan_signers(rule, m_known);
      return run_job(std::move(data), plan);
    }
    catch (const schema::UnsatisfiableError& e) {
      last = e;
    }
  }
  if (last)
    throw *last;
  throw schema::UnsatisfiableError("data " + data.name.to_uri(), "no rule applies");
}

JobResult
Coordinator::run_job(DataPacket data, const schema::SigningPlan& plan, std::optional<Name> placeholder)
{
  auto job = std::make_shared<Job>();
  data.sig_info = SignatureInfo{SignatureType::Bls, KeyLocator{placeholder ? *placeholder : make_placeholder()},
                                std::nullopt, std::nullopt};
  data.sig_value.clear();
  job->unsigned_data = std::move(data);
  job->tbs = tbs_bytes(job->unsigned_data);
  job->plan = plan;
  for (size_t s = 0; s < plan.slots.size(); ++s) {
    for (size_t n = 0; n < plan.slots[s].needed; ++n)
      job->lanes.push_back(Lane{s, 0, false});
  }

  // all_of lanes come first, so they claim their candidates before the threshold lanes do
  for (size_t l = 0; l < job->lanes.size() && !job->finished; ++l)
    start_lane(job, l);
  if (job->lanes.empty())
    finalize(job);
  m_face.process_events([&] { return job->finished; });

  for (const auto& n : job->parameter_names)
    m_parameters.erase(n);
  job->finished = true;
  m_last_attempts = job->attempts;
  if (job->failure)
    throw *job->failure;
  if (!job->result)
    throw JobFailed("the job", job->attempts.size());
  return *job->result;
}

void
Coordinator::start_lane(const std::shared_ptr<Job>& job, size_t lane_index)
{
  Lane& lane = job->lanes[lane_index];
  const auto& slot = job->plan.slots[lane.slot];
  while (lane.next < slot.candidates.size() && job->claimed.count(slot.candidates[lane.next]))
    ++lane.next;
  if (lane.next == slot.candidates.size()) {
    size_t tried = std::count_if(job->attempts.begin(), job->attempts.end(),
                                 [&](const AttemptReport& r) { return r.requirement == slot.requirement; });
    job->failure.emplace(slot.requirement, tried);
    job->finished = true;
    return;
  }
  const Name& key = slot.candidates[lane.next++];
  job->claimed.insert(key);

  auto a = std::make_shared<Attempt>();
  a->lane = lane_index;
  a->report = job->attempts.size();
  job->attempts.push_back(AttemptReport{slot.requirement, key, AttemptOutcome::Timeout, 0, m_face.now_ms(), 0});
  a->cert = m_known.find(key);
  if (!a->cert) {
    finish_attempt(job, a, AttemptOutcome::NoCertificate);
    return;
  }

  a->session = open_session(*a->cert, m_prefix, m_rng);
  auto request = build_request(a->session, m_identity, m_face.now_ms(), m_rng, m_options.forwarding_hint);
  ++a->session.rtts;
  m_face.express_interest(
    request, m_options.request_timeout_ms,
    [this, job, a](const DataPacket& ack) {
      if (job->finished || a->finished)
        return;
      try {
        handle_ack(a->session, ack, *a->cert);
      }
      catch (const crypto::AuthFailure&) {
        finish_attempt(job, a, AttemptOutcome::AuthFailure);
        return;
      }
      catch (const Error&) {
        finish_attempt(job, a, AttemptOutcome::BadAck);
        return;
      }
      if (a->session.state == SessionState::Failed) {
        finish_attempt(job, a, a->session.status == StatusCode::Busy ? AttemptOutcome::Busy : AttemptOutcome::Rejected);
        return;
      }
      auto param = serve_parameter(a->session, job->unsigned_data);
      job->parameter_names.push_back(param.name);
      m_parameters[param.name] = std::move(param);
      m_face.schedule(*a->session.eta_ms, [this, job, a] { fetch_result(job, a, 1, m_options.retry_backoff_ms); });
    },
    [this, job, a] {
      if (!job->finished && !a->finished)
        finish_attempt(job, a, AttemptOutcome::Timeout);
    });
}

void
Coordinator::fetch_result(const std::shared_ptr<Job>& job, const std::shared_ptr<Attempt>& a, unsigned attempt,
                          uint64_t backoff)
{
  if (job->finished || a->finished)
    return;
  ++a->session.rtts;
  m_face.express_interest(
    result_interest(a->session), m_options.fetch_timeout_ms,
    [this, job, a](const DataPacket& result) {
      if (job->finished || a->finished)
        return;
      try {
        auto piece = handle_result(a->session, result, *a->cert, job->unsigned_data);
        job->collected.emplace(a->cert->key_name, piece);
        finish_attempt(job, a, AttemptOutcome::Completed);
      }
      catch (const SignerDenied&) {
        finish_attempt(job, a, AttemptOutcome::Denied);
      }
      catch (const BadPiece&) {
        finish_attempt(job, a, AttemptOutcome::BadPiece);
      }
      catch (const Error&) {
        finish_attempt(job, a, AttemptOutcome::AuthFailure);
      }
    },
    [this, job, a, attempt, backoff] {
      if (job->finished || a->finished)
        return;
      if (attempt >= m_options.fetch_attempts) {
        finish_attempt(job, a, AttemptOutcome::Timeout);
        return;
      }
      m_face.schedule(backoff, [this, job, a, attempt, backoff] { fetch_result(job, a, attempt + 1, backoff * 2); });
    });
}

void
Coordinator::finish_attempt(const std::shared_ptr<Job>& job, const std::shared_ptr<Attempt>& a, AttemptOutcome outcome)
{
  a->finished = true;
  auto& report = job->attempts[a->report];
  report.outcome = outcome;
  report.rtts = a->session.rtts;
  report.finished_ms = m_face.now_ms();
  if (outcome != AttemptOutcome::Completed) {
    if (a->session.state != SessionState::Failed && a->session.state != SessionState::Done)
      fail(a->session, std::string(to_string(outcome)));
    start_lane(job, a->lane);
    return;
  }
  job->lanes[a->lane].done = true;
  if (++job->lanes_done == job->lanes.size())
    finalize(job);
}

void
Coordinator::finalize(const std::shared_ptr<Job>& job)
{
  std::vector<Name> signers;
  std::vector<crypto::BlsSignature> pieces;
  std::vector<crypto::BlsPublicKey> pks;
  for (const auto& [key, piece] : job->collected) {
    signers.push_back(key);
    pieces.push_back(piece);
    pks.push_back(m_known.find(key)->pk);
  }
  if (!schema::rule_accepts(job->plan.rule, signers)) {
    job->failure.emplace("data-profile " + job->plan.rule.data_profile.to_string(), job->attempts.size());
    job->finished = true;
    return;
  }

  JobResult result;
  result.signed_data = job->unsigned_data;
  auto aggregate = crypto::bls_aggregate_sigs(pieces);
  result.signed_data.sig_value.assign(aggregate.bytes().begin(), aggregate.bytes().end());
  result.siginfo = make_siginfo(job->unsigned_data.sig_info.key_locator.name,
                                SigInfoContent{signers, crypto::bls_aggregate_pks(pks)}, m_identity);
  result.signers = signers;
  result.attempts = job->attempts;
  publish(result.siginfo);
  job->result = std::move(result);
  job->finished = true;
}

} // namespace mps::rpc
