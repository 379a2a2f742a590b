#include "mps/net/face.hpp"

#include <algorithm>

namespace mps::net {

bool
data_satisfies(const InterestPacket& interest, const DataPacket& data)
{
  return interest.name.is_prefix_of(data.name);
}

const Name&
routing_name(const InterestPacket& interest)
{
  return interest.forwarding_hint ? *interest.forwarding_hint : interest.name;
}

void
PrefixTable::insert(const Name& prefix, InterestHandler handler)
{
  auto it = std::find_if(m_entries.begin(), m_entries.end(), [&](const auto& e) { return e.first == prefix; });
  if (it != m_entries.end())
    throw DuplicatePrefix(prefix);
  m_entries.emplace_back(prefix, std::move(handler));
}

void
PrefixTable::erase(const Name& prefix)
{
  std::erase_if(m_entries, [&](const auto& e) { return e.first == prefix; });
}

const InterestHandler*
PrefixTable::lookup(const Name& name) const
{
  const InterestHandler* best = nullptr;
  size_t best_len = 0;
  for (const auto& [prefix, handler] : m_entries) {
    if (prefix.is_prefix_of(name) && (!best || prefix.size() > best_len)) {
      best = &handler;
      best_len = prefix.size();
    }
  }
  return best;
}

const InterestHandler*
PrefixTable::dispatch(const InterestPacket& interest) const
{
  if (const auto* h = lookup(interest.name))
    return h;
  if (interest.forwarding_hint)
    return lookup(*interest.forwarding_hint);
  return nullptr;
}

std::optional<size_t>
PrefixTable::longest_match(const Name& name) const
{
  std::optional<size_t> best;
  for (const auto& entry : m_entries) {
    if (entry.first.is_prefix_of(name) && (!best || entry.first.size() > *best))
      best = entry.first.size();
  }
  return best;
}

std::optional<DataPacket>
fetch(Face& face, const InterestPacket& interest, uint64_t timeout_ms)
{
  std::optional<DataPacket> result;
  bool finished = false;
  face.express_interest(
    interest, timeout_ms,
    [&](const DataPacket& d) {
      result = d;
      finished = true;
    },
    [&] { finished = true; });
  face.process_events([&] { return finished; });
  return result;
}

std::optional<DataPacket>
fetch_with_retries(Face& face, const InterestPacket& interest, uint64_t timeout_ms, unsigned attempts)
{
  for (unsigned i = 0; i < attempts; ++i) {
    if (auto d = fetch(face, interest, timeout_ms))
      return d;
  }
  return std::nullopt;
}

} // namespace mps::net
