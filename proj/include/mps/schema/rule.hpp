#pragma once

#include "mps/error.hpp"
#include "mps/schema/pattern.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mps::schema {

/// Malformed schema text. Line and column are 1-based.
class SyntaxError : public Error
{
public:
  SyntaxError(const std::string& what, size_t line, size_t column, const std::string& file = "")
    : Error((file.empty() ? "" : file + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " + what)
    , m_message(what)
    , m_line(line)
    , m_column(column)
  {}

  /// The same error attributed to a file.
  SyntaxError in_file(const std::string& file) const { return SyntaxError(m_message, m_line, m_column, file); }

  size_t line() const noexcept { return m_line; }
  size_t column() const noexcept { return m_column; }

private:
  std::string m_message;
  size_t m_line;
  size_t m_column;
};

/// Well-formed text describing a rule that cannot be meaningful.
class SemanticError : public Error
{
public:
  using Error::Error;
};

struct Threshold
{
  size_t k = 1;
  std::vector<NamePattern> from;

  friend bool operator==(const Threshold&, const Threshold&) = default;
};

/// One multisignature rule: the data it covers, the signers that must all
/// sign, and optionally k further signers out of a candidate list. The two
/// signer sections combine with AND.
struct SchemaRule
{
  NamePattern data_profile;
  std::vector<NamePattern> all_of;
  std::optional<Threshold> threshold;

  bool applies_to(const Name& data_name) const { return data_profile.matches(data_name); }

  friend bool operator==(const SchemaRule&, const SchemaRule&) = default;
};

/// Rules combine with OR: a signer set is acceptable if any applicable rule accepts it.
struct PolicySet
{
  std::vector<SchemaRule> rules;
};

/// Parses zero or more rules. Non-fatal findings (such as a threshold that
/// wildcard-free `from` patterns can never reach) are appended to `warnings`.
std::vector<SchemaRule> parse_rules(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Parses text that must contain exactly one rule.
SchemaRule parse_rule(std::string_view text);

/// Canonical text form; parse_rules(print_rules(r)) == r.
std::string print_rule(const SchemaRule& rule);
std::string print_rules(std::span<const SchemaRule> rules);

/// True iff the distinct signers in `signer_keys` can be assigned injectively
/// to every all_of pattern with at least k of the remaining signers matching
/// some `from` pattern. The data profile is not consulted.
bool rule_accepts(const SchemaRule& rule, std::span<const Name> signer_keys);

/// True iff some rule whose data profile matches `data_name` accepts the signers.
bool verify_signer_set(const PolicySet& policy, const Name& data_name, std::span<const Name> signer_keys);

/// Reads every `*.schema` file of a directory in file-name order. Errors are
/// rethrown with the offending file name prefixed.
PolicySet load_policy_dir(const std::filesystem::path& dir, std::vector<std::string>* warnings = nullptr);

} // namespace mps::schema
