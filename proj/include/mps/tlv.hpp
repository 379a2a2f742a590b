#pragma once

#include "mps/bytes.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

/// Type-length-value primitives shared by every wire format in the project.
///
/// TLV-TYPE and TLV-LENGTH are variable-width numbers: values below 253 take
/// one octet, larger values are prefixed with 0xFD (2 octets), 0xFE (4) or
/// 0xFF (8), big-endian. Encodings must be minimal; the decoder rejects
/// anything else so that every logical value has exactly one wire form.
namespace mps::tlv {

namespace type {
inline constexpr uint32_t Interest = 0x05;
inline constexpr uint32_t Data = 0x06;
inline constexpr uint32_t Name = 0x07;
inline constexpr uint32_t GenericNameComponent = 0x08;
inline constexpr uint32_t Content = 0x15;
inline constexpr uint32_t SignatureInfo = 0x16;
inline constexpr uint32_t SignatureValue = 0x17;
inline constexpr uint32_t ContentType = 0x18;
inline constexpr uint32_t FreshnessPeriod = 0x19;
inline constexpr uint32_t SignatureType = 0x1b;
inline constexpr uint32_t KeyLocator = 0x1c;
inline constexpr uint32_t ForwardingHint = 0x1e;
inline constexpr uint32_t ApplicationParameters = 0x24;
inline constexpr uint32_t Nonce = 0x2a;
inline constexpr uint32_t Timestamp = 0x2c;
} // namespace type

/// Types at or above this value may be ignored by a decoder that does not know them.
inline constexpr uint64_t NonCriticalThreshold = 0x80;

size_t varnum_size(uint64_t n);
void append_varnum(Buffer& out, uint64_t n);

/// Shortest big-endian encoding in 1, 2, 4 or 8 octets.
void append_nni(Buffer& out, uint64_t n);
uint64_t read_nni(ByteSpan value);

void append_tlv(Buffer& out, uint64_t type, ByteSpan value);
void append_nni_tlv(Buffer& out, uint64_t type, uint64_t n);
Buffer make_tlv(uint64_t type, ByteSpan value);

struct Element
{
  uint64_t type = 0;
  ByteSpan value;
  ByteSpan wire; ///< the whole element including type and length
};

/// Sequential reader over concatenated TLV elements.
class Reader
{
public:
  explicit Reader(ByteSpan input)
    : m_input(input)
  {}

  bool empty() const { return m_pos == m_input.size(); }
  size_t position() const { return m_pos; }

  /// Throws DecodeError if the element is truncated or non-minimal.
  Element read();

private:
  uint64_t read_varnum();

  ByteSpan m_input;
  size_t m_pos = 0;
};

/// Decodes exactly one element spanning the whole input.
Element read_single(ByteSpan input);

/// The children of one TLV container, consumed in a fixed order.
///
/// Children with a type outside `known` are dropped if non-critical and
/// rejected with UnknownCriticalField otherwise. take()/require() enforce the
/// canonical order; finish() rejects anything left over (duplicates or
/// out-of-order fields).
class ElementSequence
{
public:
  ElementSequence(ByteSpan value, std::initializer_list<uint64_t> known);

  std::optional<Element> take(uint64_t type);
  Element require(uint64_t type);
  void finish() const;

private:
  std::vector<Element> m_elements;
  size_t m_next = 0;
};

} // namespace mps::tlv
