#include "mps/rpc/signer.hpp"
#include "mps/crypto/aead.hpp"

#include <cstdio>
#include <sys/wait.h>

namespace mps::rpc {

DecisionHook
auto_approve()
{
  return [](const DataPacket&) -> Decision { return Approve{}; };
}

DecisionHook
auto_deny()
{
  return [](const DataPacket&) -> Decision { return Deny{}; };
}

DecisionHook
external_command(std::string command)
{
  return [command = std::move(command)](const DataPacket& unsigned_data) -> Decision {
    FILE* pipe = ::popen(command.c_str(), "w");
    if (!pipe)
      return Deny{};
    auto wire = encode_data(unsigned_data);
    std::fwrite(wire.data(), 1, wire.size(), pipe);
    int status = ::pclose(pipe);
    if (status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0)
      return Approve{};
    return Deny{};
  };
}

SignerDaemon::SignerDaemon(net::Face& face, SignerConfig config, crypto::RandomSource& rng)
  : m_face(face)
  , m_config(std::move(config))
  , m_rng(rng)
  , m_nonces(m_config.nonce, rng)
  , m_publish_prefix(m_config.publish_prefix ? *m_config.publish_prefix
                                             : Name(m_config.prefix).append("MPS").append("result"))
{
  m_face.register_prefix(m_config.prefix, [this](const InterestPacket& i) { return on_interest(i); });
}

SignerDaemon::~SignerDaemon()
{
  m_workers.clear(); // joins hooks still running
  *m_alive = false;
  if (!m_face.is_closed())
    m_face.unregister_prefix(m_config.prefix);
}

bool
SignerDaemon::policy_allows(const DataPacket& unsigned_data) const
{
  const Name& me = m_config.identity.key_name;
  for (const auto& rule : m_config.policy.rules) {
    if (!rule.applies_to(unsigned_data.name))
      continue;
    for (const auto& p : rule.all_of) {
      if (p.matches(me))
        return true;
    }
    if (rule.threshold) {
      for (const auto& p : rule.threshold->from) {
        if (p.matches(me))
          return true;
      }
    }
  }
  return false;
}

std::optional<DataPacket>
SignerDaemon::on_interest(const InterestPacket& interest)
{
  if (schema::request_prefix(m_config.prefix).is_prefix_of(interest.name))
    return handle_request(interest);
  auto it = m_results.find(interest.name);
  if (it == m_results.end())
    return std::nullopt;
  return it->second;
}

std::optional<DataPacket>
SignerDaemon::handle_request(const InterestPacket& request)
{
  ++m_stats.requests;
  RequestParams params;
  try {
    if (!request.sig_info || !request.sig_info->timestamp || !request.sig_info->nonce || request.app_params.empty())
      throw DecodeError("request is not a signed Interest with timestamp and nonce");
    params = decode_request_params(request.app_params);
  }
  catch (const Error&) {
    ++m_stats.dropped_malformed;
    return std::nullopt;
  }

  // stale and replayed requests get no answer at all
  switch (m_nonces.check_and_record(*request.sig_info->timestamp, *request.sig_info->nonce, m_face.now_ms())) {
  case net::NonceCheck::Stale:
    ++m_stats.dropped_stale;
    return std::nullopt;
  case net::NonceCheck::Replayed:
    ++m_stats.dropped_replayed;
    return std::nullopt;
  case net::NonceCheck::Accept:
    break;
  }

  auto dh = crypto::dh_keygen(m_rng);
  crypto::SessionKeys keys;
  try {
    keys = signer_session_keys(request, params, dh);
  }
  catch (const Error&) {
    ++m_stats.dropped_malformed;
    return std::nullopt;
  }

  if (!schema::verify_coordinator(m_config.coordinator_schema, request, m_config.keychain, m_face.now_ms())) {
    ++m_stats.rejected;
    return make_ack(request, dh, keys, AckPayload{StatusCode::RejectedIdentity, {}, {}}, m_config.identity);
  }

  size_t active = std::count_if(m_sessions.begin(), m_sessions.end(), [](const auto& e) {
    return e.second->state == SessionState::Acked || e.second->state == SessionState::ParamFetched;
  });
  if (active >= m_config.max_sessions) {
    ++m_stats.busy;
    return make_ack(request, dh, keys, AckPayload{StatusCode::Busy, {}, {}}, m_config.identity);
  }

  auto s = std::make_shared<ServerSession>();
  s->keys = keys;
  s->para_name = params.para_name;
  s->result_name = Name(m_publish_prefix).append(ByteSpan(m_rng.bytes(16)));
  s->forwarding_hint = params.forwarding_hint;
  s->created_at = m_face.now_ms();
  m_sessions[s->result_name] = s;
  ++m_stats.accepted;

  // the ack leaves first; the parameter fetch starts on the next loop turn
  m_face.schedule(0, [this, s, alive = m_alive] {
    if (*alive)
      fetch_parameter(s, 1);
  });
  return make_ack(request, dh, keys, AckPayload{StatusCode::Accepted, m_config.eta_ms, s->result_name},
                  m_config.identity);
}

void
SignerDaemon::fetch_parameter(const std::shared_ptr<ServerSession>& s, unsigned attempt)
{
  InterestPacket interest;
  interest.name = s->para_name;
  interest.forwarding_hint = s->forwarding_hint;
  m_face.express_interest(
    interest, m_config.param_timeout_ms,
    [this, s, alive = m_alive](const DataPacket& param) {
      if (*alive && s->state == SessionState::Acked)
        handle_parameter(s, param);
    },
    [this, s, attempt, alive = m_alive] {
      if (!*alive || s->state != SessionState::Acked)
        return;
      if (attempt < m_config.param_attempts) {
        fetch_parameter(s, attempt + 1);
        return;
      }
      ++m_stats.param_failures;
      drop(s);
    });
}

void
SignerDaemon::handle_parameter(const std::shared_ptr<ServerSession>& s, const DataPacket& param)
{
  DataPacket unsigned_data;
  try {
    if (param.name != s->para_name)
      throw crypto::AuthFailure("parameter is not named as requested");
    unsigned_data = open_parameter(param, s->keys);
  }
  catch (const Error&) {
    ++m_stats.param_failures;
    drop(s);
    return;
  }
  s->state = SessionState::ParamFetched;
  m_received.push_back(unsigned_data);
  if (!policy_allows(unsigned_data)) {
    ++m_stats.denied;
    publish_result(s, ResultOutcome{});
    return;
  }
  decide(s, std::move(unsigned_data));
}

void
SignerDaemon::decide(const std::shared_ptr<ServerSession>& s, DataPacket unsigned_data)
{
  if (!m_config.threaded_hook) {
    auto d = m_config.hook(unsigned_data);
    apply_decision(s, std::move(unsigned_data), d);
    return;
  }
  m_workers.emplace_back([this, s, data = std::move(unsigned_data), alive = m_alive]() mutable {
    auto d = m_config.hook(data);
    m_face.post([this, s, data = std::move(data), d, alive]() mutable {
      if (*alive)
        apply_decision(s, std::move(data), d);
    });
  });
}

void
SignerDaemon::apply_decision(const std::shared_ptr<ServerSession>& s, DataPacket unsigned_data, Decision d)
{
  if (std::holds_alternative<Approve>(d)) {
    ++m_stats.signed_pieces;
    publish_result(s, ResultOutcome{sign_without_modification(m_config.identity.keys.sk, unsigned_data)});
  }
  else if (std::holds_alternative<Deny>(d)) {
    ++m_stats.denied;
    publish_result(s, ResultOutcome{});
  }
  else {
    m_face.schedule(std::get<Defer>(d).delay_ms, [this, s, data = std::move(unsigned_data), alive = m_alive]() mutable {
      if (*alive)
        decide(s, std::move(data));
    });
  }
}

void
SignerDaemon::publish_result(const std::shared_ptr<ServerSession>& s, const ResultOutcome& outcome)
{
  m_results[s->result_name] = make_result(s->result_name, outcome, s->keys, m_config.result_lifetime_ms);
  s->state = SessionState::Published;
  m_face.schedule(m_config.result_lifetime_ms, [this, s, alive = m_alive] {
    if (!*alive)
      return;
    m_results.erase(s->result_name);
    drop(s);
  });
}

void
SignerDaemon::drop(const std::shared_ptr<ServerSession>& s)
{
  s->state = SessionState::Expired;
  m_sessions.erase(s->result_name);
}

} // namespace mps::rpc
