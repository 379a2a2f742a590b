#include "mps/tlv.hpp"
#include "mps/error.hpp"

#include <algorithm>

namespace mps::tlv {

size_t
varnum_size(uint64_t n)
{
  if (n < 253)
    return 1;
  if (n <= 0xFFFF)
    return 3;
  if (n <= 0xFFFFFFFF)
    return 5;
  return 9;
}

namespace {

void
append_be(Buffer& out, uint64_t n, size_t width)
{
  for (size_t i = width; i-- > 0;)
    out.push_back(static_cast<uint8_t>(n >> (8 * i)));
}

uint64_t
read_be(ByteSpan bytes)
{
  uint64_t n = 0;
  for (uint8_t b : bytes)
    n = n << 8 | b;
  return n;
}

} // namespace

void
append_varnum(Buffer& out, uint64_t n)
{
  switch (varnum_size(n)) {
  case 1:
    out.push_back(static_cast<uint8_t>(n));
    break;
  case 3:
    out.push_back(0xFD);
    append_be(out, n, 2);
    break;
  case 5:
    out.push_back(0xFE);
    append_be(out, n, 4);
    break;
  default:
    out.push_back(0xFF);
    append_be(out, n, 8);
  }
}

void
append_nni(Buffer& out, uint64_t n)
{
  if (n <= 0xFF)
    append_be(out, n, 1);
  else if (n <= 0xFFFF)
    append_be(out, n, 2);
  else if (n <= 0xFFFFFFFF)
    append_be(out, n, 4);
  else
    append_be(out, n, 8);
}

uint64_t
read_nni(ByteSpan value)
{
  uint64_t n = read_be(value);
  switch (value.size()) {
  case 1:
    return n;
  case 2:
    if (n > 0xFF)
      return n;
    break;
  case 4:
    if (n > 0xFFFF)
      return n;
    break;
  case 8:
    if (n > 0xFFFFFFFF)
      return n;
    break;
  default:
    throw DecodeError("non-negative integer must be 1, 2, 4 or 8 octets");
  }
  throw DecodeError("non-minimal non-negative integer");
}

void
append_tlv(Buffer& out, uint64_t type, ByteSpan value)
{
  append_varnum(out, type);
  append_varnum(out, value.size());
  append(out, value);
}

void
append_nni_tlv(Buffer& out, uint64_t type, uint64_t n)
{
  Buffer value;
  append_nni(value, n);
  append_tlv(out, type, value);
}

Buffer
make_tlv(uint64_t type, ByteSpan value)
{
  Buffer out;
  out.reserve(value.size() + 10);
  append_tlv(out, type, value);
  return out;
}

uint64_t
Reader::read_varnum()
{
  if (m_pos >= m_input.size())
    throw DecodeError("truncated TLV number");
  uint8_t first = m_input[m_pos++];
  size_t width = 0;
  uint64_t minimum = 0;
  switch (first) {
  case 0xFD:
    width = 2;
    minimum = 253;
    break;
  case 0xFE:
    width = 4;
    minimum = 0x10000;
    break;
  case 0xFF:
    width = 8;
    minimum = 0x100000000ULL;
    break;
  default:
    return first;
  }
  if (m_input.size() - m_pos < width)
    throw DecodeError("truncated TLV number");
  uint64_t n = read_be(m_input.subspan(m_pos, width));
  m_pos += width;
  if (n < minimum)
    throw DecodeError("non-minimal TLV number");
  return n;
}

Element
Reader::read()
{
  size_t start = m_pos;
  Element e;
  e.type = read_varnum();
  if (e.type == 0)
    throw DecodeError("TLV type 0 is reserved");
  uint64_t length = read_varnum();
  if (length > m_input.size() - m_pos)
    throw DecodeError("TLV length " + std::to_string(length) + " exceeds remaining " +
                      std::to_string(m_input.size() - m_pos) + " bytes");
  e.value = m_input.subspan(m_pos, length);
  m_pos += length;
  e.wire = m_input.subspan(start, m_pos - start);
  return e;
}

Element
read_single(ByteSpan input)
{
  Reader reader(input);
  Element e = reader.read();
  if (!reader.empty())
    throw DecodeError("trailing bytes after TLV element");
  return e;
}

ElementSequence::ElementSequence(ByteSpan value, std::initializer_list<uint64_t> known)
{
  Reader reader(value);
  while (!reader.empty()) {
    Element e = reader.read();
    if (std::find(known.begin(), known.end(), e.type) != known.end())
      m_elements.push_back(e);
    else if (e.type < NonCriticalThreshold)
      throw UnknownCriticalField(e.type);
  }
}

std::optional<Element>
ElementSequence::take(uint64_t type)
{
  if (m_next < m_elements.size() && m_elements[m_next].type == type)
    return m_elements[m_next++];
  return std::nullopt;
}

Element
ElementSequence::require(uint64_t type)
{
  if (auto e = take(type))
    return *e;
  throw DecodeError("missing or misplaced TLV type " + std::to_string(type));
}

void
ElementSequence::finish() const
{
  if (m_next != m_elements.size())
    throw DecodeError("unexpected TLV type " + std::to_string(m_elements[m_next].type));
}

} // namespace mps::tlv
