#pragma once

#include "mps/net/face.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace mps::net {

struct UdpEndpoint
{
  std::string host;
  uint16_t port = 0;

  /// Parses `host:port`. Throws mps::Error.
  static UdpEndpoint parse(std::string_view text);
  std::string to_string() const { return host + ":" + std::to_string(port); }
};

/// Face over UDP: one TLV packet per datagram (at most MaxDatagram bytes), no
/// retransmission. Interests go to the endpoint of the longest matching
/// static route; Data answers go back to the sender of the Interest.
class UdpFace final : public Face
{
public:
  static constexpr size_t MaxDatagram = 8800;

  /// Binds to host:port; port 0 picks an ephemeral port. Throws mps::Error.
  explicit UdpFace(const UdpEndpoint& bind = {"127.0.0.1", 0});
  ~UdpFace() override;

  UdpFace(const UdpFace&) = delete;
  UdpFace& operator=(const UdpFace&) = delete;

  void add_route(const Name& prefix, const UdpEndpoint& endpoint);
  uint16_t local_port() const { return m_port; }

  void express_interest(const InterestPacket& interest, uint64_t timeout_ms, DataCallback on_data,
                        TimeoutCallback on_timeout) override;
  void register_prefix(const Name& prefix, InterestHandler handler) override;
  void unregister_prefix(const Name& prefix) override;
  uint64_t now_ms() const override;
  void schedule(uint64_t delay_ms, std::function<void()> fn) override;
  void post(std::function<void()> fn) override;
  void process_events(const std::function<bool()>& done) override;
  void close() override;
  bool is_closed() const override { return m_fd < 0; }

  /// Runs the loop until close() is called (from a handler or a posted task).
  void run();

private:
  using Clock = std::chrono::steady_clock;

  struct Pending
  {
    InterestPacket interest;
    DataCallback on_data;
  };
  struct Route
  {
    Name prefix;
    std::vector<uint8_t> addr; // sockaddr_in bytes
  };

  void send_to(ByteSpan wire, const std::vector<uint8_t>& addr);
  void receive();
  void on_datagram(ByteSpan wire, const std::vector<uint8_t>& from);
  bool run_due_timers();
  int poll_timeout_ms() const;
  void drain_posted();

  int m_fd = -1;
  int m_wake[2] = {-1, -1};
  uint16_t m_port = 0;
  PrefixTable m_table;
  std::vector<Route> m_routes;
  std::map<uint64_t, Pending> m_pending;
  uint64_t m_next_id = 0;
  std::multimap<Clock::time_point, std::function<void()>> m_timers;
  std::mutex m_post_mutex;
  std::vector<std::function<void()>> m_posted;
};

} // namespace mps::net
