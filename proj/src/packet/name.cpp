#include "mps/name.hpp"
#include "mps/error.hpp"
#include "mps/tlv.hpp"

#include <algorithm>

namespace mps {

namespace {

bool
is_unreserved(uint8_t c)
{
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
         c == '_' || c == '~' || c == '-';
}

void
check_component(ByteSpan component)
{
  if (component.empty())
    throw Error("name component must not be empty");
  if (component.size() > Name::MaxComponentSize)
    throw Error("name component exceeds 255 bytes");
}

Buffer
unescape_component(std::string_view text)
{
  Buffer out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%') {
      if (i + 2 >= text.size())
        throw Error("truncated percent escape in name");
      out.push_back(from_hex(text.substr(i + 1, 2)).front());
      i += 2;
    }
    else {
      out.push_back(static_cast<uint8_t>(text[i]));
    }
  }
  return out;
}

} // namespace

std::string
escape_component(ByteSpan component)
{
  static constexpr char digits[] = "0123456789ABCDEF";
  std::string out;
  for (uint8_t c : component) {
    if (is_unreserved(c)) {
      out.push_back(static_cast<char>(c));
    }
    else {
      out.push_back('%');
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 0x0f]);
    }
  }
  return out;
}

Name::Name(std::vector<Component> components)
  : m_components(std::move(components))
{
  for (const auto& c : m_components)
    check_component(c);
}

Name::Name(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/')
    throw Error("name must start with '/': " + std::string(uri));
  uri.remove_prefix(1);
  if (!uri.empty() && uri.back() == '/')
    uri.remove_suffix(1);
  while (!uri.empty()) {
    size_t slash = uri.find('/');
    std::string_view part = uri.substr(0, slash);
    if (part.empty())
      throw Error("empty component in name");
    append(ByteSpan(unescape_component(part)));
    if (slash == std::string_view::npos)
      break;
    uri.remove_prefix(slash + 1);
    if (uri.empty())
      throw Error("empty component in name");
  }
}

std::string
Name::to_uri() const
{
  if (m_components.empty())
    return "/";
  std::string out;
  for (const auto& c : m_components) {
    out.push_back('/');
    out += escape_component(c);
  }
  return out;
}

std::string
Name::component_uri(size_t i) const
{
  return escape_component(m_components.at(i));
}

Name&
Name::append(ByteSpan component)
{
  check_component(component);
  m_components.emplace_back(component.begin(), component.end());
  return *this;
}

Name&
Name::append(std::string_view component)
{
  return append(as_bytes(component));
}

Name&
Name::append(const Name& suffix)
{
  m_components.insert(m_components.end(), suffix.m_components.begin(), suffix.m_components.end());
  return *this;
}

Name
Name::prefix(std::ptrdiff_t n) const
{
  auto count = n >= 0 ? std::min<size_t>(static_cast<size_t>(n), size())
                      : size() - std::min<size_t>(static_cast<size_t>(-n), size());
  return Name(std::vector<Component>(m_components.begin(), m_components.begin() + count));
}

Name
Name::sub_name(size_t pos, size_t count) const
{
  if (pos >= size())
    return Name();
  size_t end = count > size() - pos ? size() : pos + count;
  return Name(std::vector<Component>(m_components.begin() + pos, m_components.begin() + end));
}

bool
Name::is_prefix_of(const Name& other) const
{
  return size() <= other.size() &&
         std::equal(m_components.begin(), m_components.end(), other.m_components.begin());
}

void
append_name(Buffer& out, const Name& name)
{
  Buffer value;
  for (const auto& c : name.components())
    tlv::append_tlv(value, tlv::type::GenericNameComponent, c);
  tlv::append_tlv(out, tlv::type::Name, value);
}

Buffer
encode_name(const Name& name)
{
  Buffer out;
  append_name(out, name);
  return out;
}

Name
decode_name_value(ByteSpan value)
{
  std::vector<Name::Component> components;
  tlv::Reader reader(value);
  while (!reader.empty()) {
    tlv::Element e = reader.read();
    if (e.type != tlv::type::GenericNameComponent)
      throw DecodeError("unexpected TLV type " + std::to_string(e.type) + " inside Name");
    if (e.value.empty() || e.value.size() > Name::MaxComponentSize)
      throw DecodeError("name component length out of range");
    components.emplace_back(e.value.begin(), e.value.end());
  }
  return Name(std::move(components));
}

Name
decode_name(ByteSpan wire)
{
  tlv::Element e = tlv::read_single(wire);
  if (e.type != tlv::type::Name)
    throw DecodeError("expected Name TLV");
  return decode_name_value(e.value);
}

} // namespace mps
