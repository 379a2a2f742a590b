#include "mps/net/sim.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <toml.hpp>

namespace mps::net {

class SimFabric::Node final : public Face
{
public:
  Node(SimFabric& fabric, std::string name)
    : m_fabric(fabric)
    , m_name(std::move(name))
  {}

  void
  express_interest(const InterestPacket& interest, uint64_t timeout_ms, DataCallback on_data,
                   TimeoutCallback on_timeout) override
  {
    if (m_closed)
      throw FaceClosed();
    ++m_interests_expressed;
    uint64_t id = m_fabric.m_next_interest++;
    m_pending.emplace(id, Pending{interest, std::move(on_data), std::move(on_timeout)});
    m_fabric.schedule(timeout_ms, [this, id] {
      auto it = m_pending.find(id);
      if (it == m_pending.end())
        return;
      auto cb = std::move(it->second.on_timeout);
      m_pending.erase(it);
      if (cb)
        cb();
    });
    if (online)
      m_fabric.send_interest(*this, interest, id);
  }

  void
  register_prefix(const Name& prefix, InterestHandler handler) override
  {
    if (m_closed)
      throw FaceClosed();
    m_table.insert(prefix, std::move(handler));
  }

  void unregister_prefix(const Name& prefix) override { m_table.erase(prefix); }

  uint64_t now_ms() const override { return m_fabric.now_ms(); }

  void
  schedule(uint64_t delay_ms, std::function<void()> fn) override
  {
    m_fabric.schedule(delay_ms, [this, fn = std::move(fn)] {
      if (!m_closed)
        fn();
    });
  }

  void post(std::function<void()> fn) override { schedule(0, std::move(fn)); }

  void process_events(const std::function<bool()>& done) override { m_fabric.run_until(done); }

  void
  close() override
  {
    m_closed = true;
    m_pending.clear();
    m_table = PrefixTable();
  }

  bool is_closed() const override { return m_closed; }

  /// Producer side: runs the handler for an arriving Interest.
  std::optional<DataPacket>
  answer(const InterestPacket& interest)
  {
    if (m_closed || !online)
      return std::nullopt;
    const InterestHandler* handler = m_table.dispatch(interest);
    if (!handler)
      return std::nullopt;
    auto data = (*handler)(interest);
    if (data && !data_satisfies(interest, *data))
      return std::nullopt;
    return data;
  }

  /// Consumer side: a Data arrived for pending Interest `id`.
  void
  deliver(uint64_t id, const DataPacket& data)
  {
    auto it = m_pending.find(id);
    if (it == m_pending.end() || !online)
      return;
    auto cb = std::move(it->second.on_data);
    m_pending.erase(it);
    if (cb)
      cb(data);
  }

  const PrefixTable& table() const { return m_table; }
  const std::string& name() const { return m_name; }

  bool online = true;

private:
  struct Pending
  {
    InterestPacket interest;
    DataCallback on_data;
    TimeoutCallback on_timeout;
  };

  SimFabric& m_fabric;
  std::string m_name;
  PrefixTable m_table;
  std::unordered_map<uint64_t, Pending> m_pending;
  bool m_closed = false;
};

SimFabric::SimFabric(FabricConfig config)
  : m_config(std::move(config))
  , m_rng(m_config.rng_seed)
{
  for (const auto& n : m_config.nodes)
    add_node(n);
  for (const auto& n : m_config.offline)
    set_online(n, false);
}

SimFabric::~SimFabric() = default;

Face&
SimFabric::add_node(const std::string& name)
{
  auto& slot = m_nodes[name];
  if (!slot)
    slot = std::make_unique<Node>(*this, name);
  return *slot;
}

Face&
SimFabric::face(const std::string& name)
{
  auto it = m_nodes.find(name);
  if (it == m_nodes.end())
    throw Error("unknown fabric node " + name);
  return *it->second;
}

void
SimFabric::set_link(const std::string& a, const std::string& b, LinkConfig link)
{
  m_config.links[std::minmax(a, b)] = link;
}

void
SimFabric::set_online(const std::string& name, bool online)
{
  static_cast<Node&>(face(name)).online = online;
}

bool
SimFabric::is_online(const std::string& name) const
{
  auto it = m_nodes.find(name);
  return it != m_nodes.end() && it->second->online;
}

void
SimFabric::schedule(uint64_t delay_ms, std::function<void()> fn)
{
  m_events.push(Event{m_now + delay_ms, m_seq++, std::move(fn)});
}

bool
SimFabric::step()
{
  if (m_events.empty())
    return false;
  Event e = m_events.top();
  m_events.pop();
  m_now = e.time;
  e.fn();
  return true;
}

void
SimFabric::run_until(const std::function<bool()>& done)
{
  while (!done() && step()) {
  }
}

void
SimFabric::run_for(uint64_t duration_ms)
{
  uint64_t end = m_now + duration_ms;
  while (!m_events.empty() && m_events.top().time <= end)
    step();
  m_now = std::max(m_now, end);
}

Buffer
SimFabric::transcript() const
{
  Buffer out;
  for (const auto& r : m_trace)
    append(out, r.wire);
  return out;
}

const LinkConfig&
SimFabric::link(const std::string& a, const std::string& b) const
{
  auto it = m_config.links.find(std::minmax(a, b));
  return it == m_config.links.end() ? m_config.default_link : it->second;
}

bool
SimFabric::draw_drop(double probability)
{
  if (probability <= 0.0)
    return false;
  // 53 uniform bits, so the draw sequence depends only on the seed.
  double u = static_cast<double>(m_rng() >> 11) * 0x1.0p-53;
  return u < probability;
}

SimFabric::Node*
SimFabric::route(const Name& name)
{
  Node* best = nullptr;
  size_t best_len = 0;
  for (auto& [_, node] : m_nodes) {
    auto len = node->table().longest_match(name);
    if (len && (!best || *len > best_len)) {
      best = node.get();
      best_len = *len;
    }
  }
  return best;
}

void
SimFabric::send_interest(Node& from, const InterestPacket& interest, uint64_t id)
{
  Node* to = route(routing_name(interest));
  if (!to)
    return;
  const LinkConfig& l = link(from.name(), to->name());
  bool lost = draw_drop(l.drop_probability);
  m_trace.push_back({m_now, from.name(), to->name(), !lost, encode_interest(interest)});
  if (lost)
    return;
  schedule(l.latency_ms, [this, &from, to, interest, id] {
    auto data = to->answer(interest);
    if (!data)
      return;
    const LinkConfig& back = link(to->name(), from.name());
    bool lost = draw_drop(back.drop_probability);
    m_trace.push_back({m_now, to->name(), from.name(), !lost, encode_data(*data)});
    if (lost)
      return;
    schedule(back.latency_ms, [&from, id, data = std::move(*data)] { from.deliver(id, data); });
  });
}

FabricConfig
parse_fabric_config(std::string_view toml_text)
{
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  }
  catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "fabric config: " << e.description() << " at line " << e.source().begin.line;
    throw Error(os.str());
  }

  auto read_link = [](const toml::node_view<toml::node>& t, LinkConfig base) {
    if (auto v = t["latency_ms"].value<int64_t>()) {
      if (*v < 0)
        throw Error("fabric config: latency_ms must be non-negative");
      base.latency_ms = static_cast<uint64_t>(*v);
    }
    if (auto v = t["drop_probability"].value<double>()) {
      if (*v < 0.0 || *v > 1.0)
        throw Error("fabric config: drop_probability must be within [0, 1]");
      base.drop_probability = *v;
    }
    return base;
  };

  FabricConfig cfg;
  if (auto seed = doc["seed"].value<int64_t>())
    cfg.rng_seed = static_cast<uint64_t>(*seed);
  cfg.default_link = read_link(doc["default"], cfg.default_link);

  if (auto nodes = doc["node"].as_array()) {
    for (auto& n : *nodes) {
      auto* t = n.as_table();
      auto name = t ? (*t)["name"].value<std::string>() : std::nullopt;
      if (!name)
        throw Error("fabric config: every [[node]] needs a name");
      cfg.nodes.push_back(*name);
      if (!(*t)["online"].value_or(true))
        cfg.offline.push_back(*name);
    }
  }
  if (auto links = doc["link"].as_array()) {
    for (auto& l : *links) {
      auto* t = l.as_table();
      auto a = t ? (*t)["a"].value<std::string>() : std::nullopt;
      auto b = t ? (*t)["b"].value<std::string>() : std::nullopt;
      if (!a || !b)
        throw Error("fabric config: every [[link]] needs endpoints a and b");
      cfg.links[std::minmax(*a, *b)] = read_link(toml::node_view<toml::node>(l), cfg.default_link);
    }
  }
  return cfg;
}

FabricConfig
load_fabric_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_fabric_config(text.str());
}

} // namespace mps::net
