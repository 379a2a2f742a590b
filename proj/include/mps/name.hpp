#pragma once

#include "mps/bytes.hpp"

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mps {

/// Hierarchical name: an ordered list of 1..255-byte components.
///
/// The text form is `/a/b/c`; bytes outside `[A-Za-z0-9._~-]` are written as
/// `%XX`. The empty name prints as `/`.
class Name
{
public:
  using Component = Buffer;

  static constexpr size_t MaxComponentSize = 255;

  Name() = default;
  explicit Name(std::vector<Component> components);

  /// Parses the text form. Throws mps::Error on malformed input.
  explicit Name(std::string_view uri);
  explicit Name(const char* uri)
    : Name(std::string_view(uri))
  {}

  std::string to_uri() const;

  size_t size() const { return m_components.size(); }
  bool empty() const { return m_components.empty(); }
  const Component& operator[](size_t i) const { return m_components[i]; }
  const Component& at(size_t i) const { return m_components.at(i); }
  const std::vector<Component>& components() const { return m_components; }

  /// Component rendered as text (escaped form).
  std::string component_uri(size_t i) const;

  Name& append(ByteSpan component);
  Name& append(std::string_view component);
  Name& append(const Name& suffix);

  /// First n components; negative n drops components from the end.
  Name prefix(std::ptrdiff_t n) const;
  Name sub_name(size_t pos, size_t count = static_cast<size_t>(-1)) const;

  bool is_prefix_of(const Name& other) const;

  friend auto operator<=>(const Name&, const Name&) = default;
  friend bool operator==(const Name&, const Name&) = default;

private:
  std::vector<Component> m_components;
};

std::string escape_component(ByteSpan component);

Buffer encode_name(const Name& name);
void append_name(Buffer& out, const Name& name);

/// Expects exactly one Name TLV covering the input.
Name decode_name(ByteSpan wire);

/// Decodes the value part of a Name TLV (the concatenated components).
Name decode_name_value(ByteSpan value);

inline std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.to_uri();
}

} // namespace mps
