#include "mps/schema/pattern.hpp"
#include "mps/error.hpp"

#include <algorithm>

namespace mps::schema {

NamePattern
NamePattern::parse(std::string_view text)
{
  if (text.empty() || text.front() != '/')
    throw Error("pattern must start with '/': " + std::string(text));
  std::vector<Component> components;
  std::string_view rest = text.substr(1);
  if (!rest.empty() && rest.back() == '/')
    rest.remove_suffix(1);
  while (!rest.empty()) {
    size_t slash = rest.find('/');
    std::string_view part = rest.substr(0, slash);
    if (part.empty())
      throw Error("empty component in pattern: " + std::string(text));
    if (part == "*" || (part.size() >= 2 && part.front() == '<' && part.back() == '>')) {
      components.emplace_back(std::nullopt);
    }
    else if (part.find('*') != std::string_view::npos) {
      throw Error("'*' must be a whole component (write '/" + std::string(part.substr(0, part.find('*'))) +
                  "/*' or escape it as %2A): " + std::string(text));
    }
    else {
      components.emplace_back(Name("/" + std::string(part))[0]);
    }
    if (slash == std::string_view::npos)
      break;
    rest.remove_prefix(slash + 1);
    if (rest.empty())
      throw Error("empty component in pattern: " + std::string(text));
  }
  return NamePattern(std::move(components));
}

NamePattern
NamePattern::literal(const Name& name)
{
  return NamePattern(std::vector<Component>(name.components().begin(), name.components().end()));
}

bool
NamePattern::matches(const Name& name) const
{
  if (name.size() != m_components.size())
    return false;
  for (size_t i = 0; i < m_components.size(); ++i) {
    if (m_components[i] && *m_components[i] != name[i])
      return false;
  }
  return true;
}

bool
NamePattern::has_wildcard() const
{
  return std::any_of(m_components.begin(), m_components.end(), [](const Component& c) { return !c; });
}

std::string
NamePattern::to_string() const
{
  if (m_components.empty())
    return "/";
  std::string out;
  for (const auto& c : m_components) {
    out.push_back('/');
    out += c ? escape_component(*c) : "*";
  }
  return out;
}

} // namespace mps::schema
