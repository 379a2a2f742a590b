#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mps {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed, truncated or non-canonical wire encoding.
class DecodeError : public Error
{
public:
  using Error::Error;
};

/// An unrecognized TLV whose type number is below the non-critical range.
class UnknownCriticalField : public DecodeError
{
public:
  explicit UnknownCriticalField(uint64_t type)
    : DecodeError("unknown critical TLV type " + std::to_string(type))
    , m_type(type)
  {}

  uint64_t type() const noexcept { return m_type; }

private:
  uint64_t m_type;
};

class EmptyInput : public Error
{
public:
  using Error::Error;
};

} // namespace mps
