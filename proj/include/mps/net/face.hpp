#pragma once

#include "mps/error.hpp"
#include "mps/packet.hpp"

#include <functional>
#include <optional>

namespace mps::net {

class FaceClosed : public Error
{
public:
  FaceClosed()
    : Error("face is closed")
  {}
};

class DuplicatePrefix : public Error
{
public:
  explicit DuplicatePrefix(const Name& prefix)
    : Error("prefix already registered: " + prefix.to_uri())
  {}
};

using DataCallback = std::function<void(const DataPacket&)>;
using TimeoutCallback = std::function<void()>;

/// Producer callback. Returning std::nullopt sends nothing; the requester times out.
using InterestHandler = std::function<std::optional<DataPacket>(const InterestPacket&)>;

/// A Data answers an Interest if its name equals the Interest name or extends it.
bool data_satisfies(const InterestPacket& interest, const DataPacket& data);

/// The name an Interest is routed by: its forwarding hint if present, else its name.
const Name& routing_name(const InterestPacket& interest);

/// Longest-prefix-match table of producer handlers.
class PrefixTable
{
public:
  /// Throws DuplicatePrefix.
  void insert(const Name& prefix, InterestHandler handler);
  void erase(const Name& prefix);

  /// Handler of the longest registered prefix of `name`, or nullptr.
  const InterestHandler* lookup(const Name& name) const;

  /// Handler for an arriving Interest: by its name, else by its forwarding hint.
  const InterestHandler* dispatch(const InterestPacket& interest) const;

  /// Length of the longest registered prefix of `name`, if any.
  std::optional<size_t> longest_match(const Name& name) const;

  bool empty() const { return m_entries.empty(); }

private:
  std::vector<std::pair<Name, InterestHandler>> m_entries;
};

/// Interest/Data endpoint.
///
/// Callbacks (data, timeout, handler, scheduled and posted functions) run on
/// the thread that drives the face's event loop, one at a time. post() may be
/// called from any thread; everything else belongs to the loop thread.
class Face
{
public:
  virtual ~Face() = default;

  /// Exactly one of on_data / on_timeout is eventually called, unless the face
  /// is closed first. Throws FaceClosed.
  virtual void express_interest(const InterestPacket& interest, uint64_t timeout_ms, DataCallback on_data,
                                TimeoutCallback on_timeout) = 0;

  /// Throws DuplicatePrefix or FaceClosed.
  virtual void register_prefix(const Name& prefix, InterestHandler handler) = 0;
  virtual void unregister_prefix(const Name& prefix) = 0;

  /// Milliseconds since the Unix epoch (virtual time on a simulated fabric).
  virtual uint64_t now_ms() const = 0;

  virtual void schedule(uint64_t delay_ms, std::function<void()> fn) = 0;
  virtual void post(std::function<void()> fn) = 0;

  /// Runs the event loop until `done()` holds or no further event can occur.
  virtual void process_events(const std::function<bool()>& done) = 0;

  virtual void close() = 0;
  virtual bool is_closed() const = 0;

  /// Number of Interests this face has expressed.
  uint64_t interests_expressed() const { return m_interests_expressed; }

protected:
  uint64_t m_interests_expressed = 0;
};

/// Expresses one Interest and drives the loop until it is answered or times out.
std::optional<DataPacket> fetch(Face& face, const InterestPacket& interest, uint64_t timeout_ms);

/// fetch() with up to `attempts` tries.
std::optional<DataPacket> fetch_with_retries(Face& face, const InterestPacket& interest, uint64_t timeout_ms,
                                             unsigned attempts = 3);

} // namespace mps::net
