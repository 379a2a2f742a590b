#pragma once

#include "mps/name.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mps::schema {

/// A name with single-component wildcards.
///
/// In text form a component that is exactly `*` (or `<...>`, the capture
/// notation used in coordinator schemas) is a wildcard matching any one
/// component. A literal asterisk component is written `%2A`. An asterisk glued
/// to other characters (`QA*`) is rejected: there is no intra-component glob.
class NamePattern
{
public:
  /// std::nullopt is the wildcard.
  using Component = std::optional<Name::Component>;

  NamePattern() = default;
  explicit NamePattern(std::vector<Component> components)
    : m_components(std::move(components))
  {}

  /// Throws mps::Error on malformed text.
  static NamePattern parse(std::string_view text);

  /// A pattern matching exactly `name`.
  static NamePattern literal(const Name& name);

  /// True iff the lengths are equal and every component matches.
  bool matches(const Name& name) const;

  bool has_wildcard() const;
  size_t size() const { return m_components.size(); }
  const std::vector<Component>& components() const { return m_components; }

  std::string to_string() const;

  friend bool operator==(const NamePattern&, const NamePattern&) = default;

private:
  std::vector<Component> m_components;
};

} // namespace mps::schema
