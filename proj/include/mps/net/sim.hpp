#pragma once

#include "mps/net/face.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <string>

namespace mps::net {

struct LinkConfig
{
  uint64_t latency_ms = 10;
  double drop_probability = 0.0;
};

/// Topology of a simulated fabric: named nodes, symmetric links between
/// them, a default for unlisted pairs, and the seed for packet loss.
struct FabricConfig
{
  uint64_t rng_seed = 1;
  LinkConfig default_link;
  std::vector<std::string> nodes;
  std::vector<std::string> offline;
  std::map<std::pair<std::string, std::string>, LinkConfig> links;
};

/// Parses the TOML fabric description. Throws mps::Error.
FabricConfig parse_fabric_config(std::string_view toml_text);
FabricConfig load_fabric_config(const std::filesystem::path& path);

/// One packet put on a link, whether or not it arrived.
struct TraceRecord
{
  uint64_t time_ms = 0;
  std::string from;
  std::string to;
  bool delivered = false;
  Buffer wire;
};

/// Deterministic in-process network with a virtual clock.
///
/// Each node has one Face. An Interest goes to the node holding the longest
/// registered prefix of its routing name (forwarding hint, else name), after
/// the link latency, unless the link drops it or either end is offline; the
/// Data answer comes back the same way. Events at the same virtual time run
/// in the order they were scheduled, and packet loss draws from a seeded
/// generator, so a given seed and topology always produce the same trace.
class SimFabric
{
public:
  static constexpr uint64_t Epoch = 1'700'000'000'000;

  explicit SimFabric(FabricConfig config = {});
  ~SimFabric();

  SimFabric(const SimFabric&) = delete;
  SimFabric& operator=(const SimFabric&) = delete;

  /// Creates the node if needed and returns its face (owned by the fabric).
  Face& add_node(const std::string& name);
  Face& face(const std::string& name);

  void set_link(const std::string& a, const std::string& b, LinkConfig link);
  void set_online(const std::string& name, bool online);
  bool is_online(const std::string& name) const;

  uint64_t now_ms() const { return m_now; }
  void schedule(uint64_t delay_ms, std::function<void()> fn);

  /// Runs the next event; false if the queue is empty.
  bool step();
  void run_until(const std::function<bool()>& done);
  void run_for(uint64_t duration_ms);
  void run() { run_until([] { return false; }); }

  const std::vector<TraceRecord>& trace() const { return m_trace; }
  void clear_trace() { m_trace.clear(); }

  /// Every byte that crossed any link, in send order.
  Buffer transcript() const;

private:
  class Node;
  friend class Node;

  struct Event
  {
    uint64_t time;
    uint64_t seq;
    std::function<void()> fn;
  };
  struct Later
  {
    bool operator()(const Event& a, const Event& b) const
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  const LinkConfig& link(const std::string& a, const std::string& b) const;
  bool draw_drop(double probability);
  Node* route(const Name& name);
  void send_interest(Node& from, const InterestPacket& interest, uint64_t id);

  FabricConfig m_config;
  std::map<std::string, std::unique_ptr<Node>> m_nodes;
  std::priority_queue<Event, std::vector<Event>, Later> m_events;
  uint64_t m_now = Epoch;
  uint64_t m_seq = 0;
  uint64_t m_next_interest = 0;
  std::mt19937_64 m_rng;
  std::vector<TraceRecord> m_trace;
};

} // namespace mps::net
