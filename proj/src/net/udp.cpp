#include "mps/net/udp.hpp"
#include "mps/tlv.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace mps::net {

namespace {

std::vector<uint8_t>
resolve(const UdpEndpoint& ep)
{
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_DGRAM;
  addrinfo* res = nullptr;
  int rc = ::getaddrinfo(ep.host.c_str(), std::to_string(ep.port).c_str(), &hints, &res);
  if (rc != 0 || !res)
    throw Error("cannot resolve " + ep.to_string() + ": " + ::gai_strerror(rc));
  std::vector<uint8_t> out(reinterpret_cast<uint8_t*>(res->ai_addr),
                           reinterpret_cast<uint8_t*>(res->ai_addr) + res->ai_addrlen);
  ::freeaddrinfo(res);
  return out;
}

[[noreturn]] void
fail_errno(const std::string& what)
{
  throw Error(what + ": " + std::strerror(errno));
}

} // namespace

UdpEndpoint
UdpEndpoint::parse(std::string_view text)
{
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw Error("expected host:port, got '" + std::string(text) + "'");
  int port = 0;
  try {
    port = std::stoi(std::string(text.substr(colon + 1)));
  }
  catch (const std::exception&) {
    port = -1;
  }
  if (port <= 0 || port > 65535)
    throw Error("bad port in '" + std::string(text) + "'");
  return {std::string(text.substr(0, colon)), static_cast<uint16_t>(port)};
}

UdpFace::UdpFace(const UdpEndpoint& bind)
{
  auto addr = resolve(bind);
  m_fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_NONBLOCK | SOCK_CLOEXEC, 0);
  if (m_fd < 0)
    fail_errno("socket");
  if (::bind(m_fd, reinterpret_cast<const sockaddr*>(addr.data()), static_cast<socklen_t>(addr.size())) < 0) {
    int err = errno;
    ::close(m_fd);
    m_fd = -1;
    errno = err;
    fail_errno("bind " + bind.to_string());
  }
  sockaddr_in local{};
  socklen_t len = sizeof(local);
  ::getsockname(m_fd, reinterpret_cast<sockaddr*>(&local), &len);
  m_port = ntohs(local.sin_port);
  if (::pipe2(m_wake, O_NONBLOCK | O_CLOEXEC) < 0)
    fail_errno("pipe");
}

UdpFace::~UdpFace()
{
  close();
  for (int fd : m_wake) {
    if (fd >= 0)
      ::close(fd);
  }
}

void
UdpFace::add_route(const Name& prefix, const UdpEndpoint& endpoint)
{
  m_routes.push_back({prefix, resolve(endpoint)});
}

void
UdpFace::send_to(ByteSpan wire, const std::vector<uint8_t>& addr)
{
  if (wire.size() > MaxDatagram)
    throw Error("packet of " + std::to_string(wire.size()) + " bytes exceeds the UDP datagram limit");
  // Loss is tolerated here: the requester's timeout covers it.
  ::sendto(m_fd, wire.data(), wire.size(), 0, reinterpret_cast<const sockaddr*>(addr.data()),
           static_cast<socklen_t>(addr.size()));
}

void
UdpFace::express_interest(const InterestPacket& interest, uint64_t timeout_ms, DataCallback on_data,
                          TimeoutCallback on_timeout)
{
  if (is_closed())
    throw FaceClosed();
  ++m_interests_expressed;
  uint64_t id = m_next_id++;
  m_pending.emplace(id, Pending{interest, std::move(on_data)});
  schedule(timeout_ms, [this, id, on_timeout = std::move(on_timeout)] {
    if (m_pending.erase(id) && on_timeout)
      on_timeout();
  });

  const Route* best = nullptr;
  for (const auto& r : m_routes) {
    if (r.prefix.is_prefix_of(routing_name(interest)) && (!best || r.prefix.size() > best->prefix.size()))
      best = &r;
  }
  if (best)
    send_to(encode_interest(interest), best->addr);
}

void
UdpFace::register_prefix(const Name& prefix, InterestHandler handler)
{
  if (is_closed())
    throw FaceClosed();
  m_table.insert(prefix, std::move(handler));
}

void
UdpFace::unregister_prefix(const Name& prefix)
{
  m_table.erase(prefix);
}

uint64_t
UdpFace::now_ms() const
{
  return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::system_clock::now().time_since_epoch())
                                 .count());
}

void
UdpFace::schedule(uint64_t delay_ms, std::function<void()> fn)
{
  m_timers.emplace(Clock::now() + std::chrono::milliseconds(delay_ms), std::move(fn));
}

void
UdpFace::post(std::function<void()> fn)
{
  {
    std::lock_guard lock(m_post_mutex);
    m_posted.push_back(std::move(fn));
  }
  uint8_t one = 1;
  [[maybe_unused]] auto n = ::write(m_wake[1], &one, 1);
}

void
UdpFace::drain_posted()
{
  uint8_t sink[64];
  while (::read(m_wake[0], sink, sizeof(sink)) > 0) {
  }
  std::vector<std::function<void()>> tasks;
  {
    std::lock_guard lock(m_post_mutex);
    tasks.swap(m_posted);
  }
  for (auto& t : tasks)
    t();
}

bool
UdpFace::run_due_timers()
{
  bool ran = false;
  while (!m_timers.empty() && m_timers.begin()->first <= Clock::now()) {
    auto fn = std::move(m_timers.begin()->second);
    m_timers.erase(m_timers.begin());
    fn();
    ran = true;
  }
  return ran;
}

int
UdpFace::poll_timeout_ms() const
{
  if (m_timers.empty())
    return 1000;
  auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(m_timers.begin()->first - Clock::now()).count();
  return static_cast<int>(std::clamp<long long>(wait + 1, 0, 1000));
}

void
UdpFace::receive()
{
  uint8_t buf[MaxDatagram + 1];
  for (;;) {
    sockaddr_in from{};
    socklen_t len = sizeof(from);
    ssize_t n = ::recvfrom(m_fd, buf, sizeof(buf), 0, reinterpret_cast<sockaddr*>(&from), &len);
    if (n < 0)
      return;
    if (static_cast<size_t>(n) > MaxDatagram)
      continue;
    std::vector<uint8_t> addr(reinterpret_cast<uint8_t*>(&from), reinterpret_cast<uint8_t*>(&from) + len);
    on_datagram(ByteSpan(buf, static_cast<size_t>(n)), addr);
    if (is_closed())
      return;
  }
}

void
UdpFace::on_datagram(ByteSpan wire, const std::vector<uint8_t>& from)
{
  try {
    if (!wire.empty() && wire[0] == tlv::type::Interest) {
      auto interest = decode_interest(wire);
      const InterestHandler* handler = m_table.dispatch(interest);
      if (!handler)
        return;
      auto data = (*handler)(interest);
      if (data && data_satisfies(interest, *data) && !is_closed())
        send_to(encode_data(*data), from);
    }
    else if (!wire.empty() && wire[0] == tlv::type::Data) {
      auto data = decode_data(wire);
      for (auto it = m_pending.begin(); it != m_pending.end(); ++it) {
        if (data_satisfies(it->second.interest, data)) {
          auto cb = std::move(it->second.on_data);
          m_pending.erase(it);
          if (cb)
            cb(data);
          break;
        }
      }
    }
  }
  catch (const DecodeError&) {
    // Undecodable datagrams are dropped, as a forwarder would.
  }
}

void
UdpFace::process_events(const std::function<bool()>& done)
{
  while (!is_closed() && !done()) {
    pollfd fds[2] = {{m_fd, POLLIN, 0}, {m_wake[0], POLLIN, 0}};
    int rc = ::poll(fds, 2, poll_timeout_ms());
    if (rc < 0 && errno != EINTR)
      fail_errno("poll");
    if (fds[1].revents & POLLIN)
      drain_posted();
    if (!is_closed() && (fds[0].revents & POLLIN))
      receive();
    if (!is_closed())
      run_due_timers();
    if (m_timers.empty() && m_pending.empty() && m_table.empty())
      break;
  }
}

void
UdpFace::run()
{
  process_events([] { return false; });
}

void
UdpFace::close()
{
  if (m_fd >= 0) {
    ::close(m_fd);
    m_fd = -1;
  }
  m_pending.clear();
  m_timers.clear();
}

} // namespace mps::net
