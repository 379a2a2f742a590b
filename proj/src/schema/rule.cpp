#include "mps/schema/rule.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mps::schema {

namespace {

struct Token
{
  enum Kind { Word, Open, Close, End } kind = End;
  std::string text;
  size_t line = 0;
  size_t column = 0;
};

class Lexer
{
public:
  explicit Lexer(std::string_view text)
    : m_text(text)
  {}

  Token
  next()
  {
    skip_blank();
    Token t;
    t.line = m_line;
    t.column = m_column;
    if (m_pos == m_text.size())
      return t;
    char c = m_text[m_pos];
    if (c == '{' || c == '}') {
      t.kind = c == '{' ? Token::Open : Token::Close;
      t.text = c;
      advance();
      return t;
    }
    t.kind = Token::Word;
    while (m_pos < m_text.size() && !std::isspace(static_cast<unsigned char>(m_text[m_pos])) &&
           m_text[m_pos] != '{' && m_text[m_pos] != '}' && m_text[m_pos] != '#') {
      t.text.push_back(m_text[m_pos]);
      advance();
    }
    return t;
  }

private:
  void
  advance()
  {
    if (m_text[m_pos] == '\n') {
      ++m_line;
      m_column = 1;
    }
    else {
      ++m_column;
    }
    ++m_pos;
  }

  void
  skip_blank()
  {
    while (m_pos < m_text.size()) {
      if (m_text[m_pos] == '#') {
        while (m_pos < m_text.size() && m_text[m_pos] != '\n')
          advance();
      }
      else if (std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
        advance();
      }
      else {
        break;
      }
    }
  }

  std::string_view m_text;
  size_t m_pos = 0;
  size_t m_line = 1;
  size_t m_column = 1;
};

enum class Keyword { None, DataProfile, Data, Profile, AllOf, AtLeastNum, From };

Keyword
keyword_of(std::string word)
{
  if (!word.empty() && word.back() == ':')
    word.pop_back();
  std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
  if (word == "data-profile")
    return Keyword::DataProfile;
  if (word == "data")
    return Keyword::Data;
  if (word == "profile")
    return Keyword::Profile;
  if (word == "all-of")
    return Keyword::AllOf;
  if (word == "at-least-num")
    return Keyword::AtLeastNum;
  if (word == "from")
    return Keyword::From;
  return Keyword::None;
}

class Parser
{
public:
  Parser(std::string_view text, std::vector<std::string>* warnings)
    : m_lexer(text)
    , m_warnings(warnings)
  {
    shift();
  }

  std::vector<SchemaRule>
  parse_all()
  {
    std::vector<SchemaRule> rules;
    while (m_tok.kind != Token::End)
      rules.push_back(parse_one());
    return rules;
  }

private:
  void shift() { m_tok = m_lexer.next(); }

  [[noreturn]] void
  fail(const std::string& what) const
  {
    throw SyntaxError(what, m_tok.line, m_tok.column);
  }

  [[noreturn]] void
  semantic(size_t line, const std::string& what) const
  {
    throw SemanticError("line " + std::to_string(line) + ": " + what);
  }

  NamePattern
  parse_pattern()
  {
    if (m_tok.kind != Token::Word)
      fail("expected a name pattern");
    if (keyword_of(m_tok.text) != Keyword::None)
      fail("expected a name pattern, found keyword '" + m_tok.text + "'");
    try {
      auto p = NamePattern::parse(m_tok.text);
      shift();
      return p;
    }
    catch (const Error& e) {
      fail(e.what());
    }
  }

  std::vector<NamePattern>
  parse_block()
  {
    if (m_tok.kind != Token::Open)
      fail("expected '{'");
    shift();
    std::vector<NamePattern> out;
    while (m_tok.kind != Token::Close) {
      if (m_tok.kind == Token::End)
        fail("unterminated '{' block");
      out.push_back(parse_pattern());
    }
    shift();
    return out;
  }

  void
  expect_data_profile()
  {
    if (m_tok.kind != Token::Word)
      fail("expected 'data-profile'");
    Keyword kw = keyword_of(m_tok.text);
    if (kw == Keyword::DataProfile) {
      shift();
      return;
    }
    if (kw == Keyword::Data) {
      shift();
      if (m_tok.kind == Token::Word && keyword_of(m_tok.text) == Keyword::Profile) {
        shift();
        return;
      }
    }
    fail("expected 'data-profile'");
  }

  SchemaRule
  parse_one()
  {
    size_t rule_line = m_tok.line;
    expect_data_profile();
    SchemaRule rule;
    rule.data_profile = parse_pattern();

    bool seen_all_of = false;
    std::optional<size_t> k;
    std::optional<std::vector<NamePattern>> from;
    size_t threshold_line = 0;

    while (m_tok.kind == Token::Word) {
      Keyword kw = keyword_of(m_tok.text);
      size_t line = m_tok.line;
      if (kw == Keyword::DataProfile || kw == Keyword::Data)
        break;
      shift();
      switch (kw) {
      case Keyword::AllOf:
        if (seen_all_of)
          semantic(line, "duplicate 'all-of' section");
        seen_all_of = true;
        rule.all_of = parse_block();
        break;
      case Keyword::AtLeastNum: {
        if (k)
          semantic(line, "duplicate 'at-least-num'");
        if (m_tok.kind != Token::Word)
          fail("expected a number after 'at-least-num'");
        size_t value = 0;
        auto [end, ec] = std::from_chars(m_tok.text.data(), m_tok.text.data() + m_tok.text.size(), value);
        if (ec != std::errc() || end != m_tok.text.data() + m_tok.text.size())
          fail("expected a number after 'at-least-num'");
        shift();
        k = value;
        threshold_line = line;
        break;
      }
      case Keyword::From:
        if (from)
          semantic(line, "duplicate 'from' section");
        from = parse_block();
        if (!threshold_line)
          threshold_line = line;
        break;
      default:
        fail("unexpected '" + m_tok.text + "'");
      }
    }
    if (m_tok.kind == Token::Open || m_tok.kind == Token::Close)
      fail("unexpected '" + m_tok.text + "'");

    if (k.has_value() != from.has_value())
      semantic(threshold_line, "'at-least-num' and 'from' must appear together");
    if (k) {
      if (*k < 1)
        semantic(threshold_line, "'at-least-num' must be at least 1");
      if (from->empty())
        semantic(threshold_line, "'from' lists no signers");
      bool bounded = std::none_of(from->begin(), from->end(), [](const NamePattern& p) { return p.has_wildcard(); });
      if (bounded && *k > from->size() && m_warnings)
        m_warnings->push_back("line " + std::to_string(threshold_line) + ": at-least-num " + std::to_string(*k) +
                              " exceeds the " + std::to_string(from->size()) +
                              " signers the wildcard-free 'from' list can name; the rule is never satisfiable");
      rule.threshold = Threshold{*k, std::move(*from)};
    }
    if (rule.all_of.empty() && !rule.threshold)
      semantic(rule_line, "rule for " + rule.data_profile.to_string() + " names no signers");
    return rule;
  }

  Lexer m_lexer;
  Token m_tok;
  std::vector<std::string>* m_warnings;
};

void
print_block(std::ostringstream& os, const char* keyword, const std::vector<NamePattern>& patterns)
{
  os << keyword << " {\n";
  for (const auto& p : patterns)
    os << "  " << p.to_string() << "\n";
  os << "}\n";
}

/// Kuhn's augmenting-path search: try to give left node `u` a partner.
bool
augment(size_t u, const std::vector<std::vector<size_t>>& adj, std::vector<int>& partner, std::vector<bool>& visited)
{
  for (size_t v : adj[u]) {
    if (visited[v])
      continue;
    visited[v] = true;
    if (partner[v] < 0 || augment(static_cast<size_t>(partner[v]), adj, partner, visited)) {
      partner[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

} // namespace

std::vector<SchemaRule>
parse_rules(std::string_view text, std::vector<std::string>* warnings)
{
  return Parser(text, warnings).parse_all();
}

SchemaRule
parse_rule(std::string_view text)
{
  auto rules = parse_rules(text);
  if (rules.size() != 1)
    throw SemanticError("expected exactly one rule, found " + std::to_string(rules.size()));
  return std::move(rules.front());
}

std::string
print_rule(const SchemaRule& rule)
{
  std::ostringstream os;
  os << "data-profile " << rule.data_profile.to_string() << "\n";
  if (!rule.all_of.empty())
    print_block(os, "all-of", rule.all_of);
  if (rule.threshold) {
    os << "at-least-num " << rule.threshold->k << "\n";
    print_block(os, "from", rule.threshold->from);
  }
  return os.str();
}

std::string
print_rules(std::span<const SchemaRule> rules)
{
  std::string out;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (i > 0)
      out += "\n";
    out += print_rule(rules[i]);
  }
  return out;
}

bool
rule_accepts(const SchemaRule& rule, std::span<const Name> signer_keys)
{
  std::vector<Name> signers(signer_keys.begin(), signer_keys.end());
  std::sort(signers.begin(), signers.end());
  signers.erase(std::unique(signers.begin(), signers.end()), signers.end());

  size_t k = rule.threshold ? rule.threshold->k : 0;
  if (rule.all_of.size() + k > signers.size())
    return false;

  // Left side: one node per all_of pattern, then k interchangeable threshold
  // slots. The rule holds iff a matching saturates the left side.
  std::vector<std::vector<size_t>> adj(rule.all_of.size() + k);
  for (size_t s = 0; s < signers.size(); ++s) {
    for (size_t i = 0; i < rule.all_of.size(); ++i) {
      if (rule.all_of[i].matches(signers[s]))
        adj[i].push_back(s);
    }
    if (rule.threshold) {
      bool eligible = std::any_of(rule.threshold->from.begin(), rule.threshold->from.end(),
                                  [&](const NamePattern& p) { return p.matches(signers[s]); });
      if (eligible) {
        for (size_t j = 0; j < k; ++j)
          adj[rule.all_of.size() + j].push_back(s);
      }
    }
  }

  std::vector<int> partner(signers.size(), -1);
  for (size_t u = 0; u < adj.size(); ++u) {
    std::vector<bool> visited(signers.size(), false);
    if (!augment(u, adj, partner, visited))
      return false;
  }
  return true;
}

bool
verify_signer_set(const PolicySet& policy, const Name& data_name, std::span<const Name> signer_keys)
{
  return std::any_of(policy.rules.begin(), policy.rules.end(), [&](const SchemaRule& rule) {
    return rule.applies_to(data_name) && rule_accepts(rule, signer_keys);
  });
}

PolicySet
load_policy_dir(const std::filesystem::path& dir, std::vector<std::string>* warnings)
{
  if (!std::filesystem::is_directory(dir))
    throw Error("policy directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".schema")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  PolicySet policy;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in)
      throw Error("cannot read " + file.string());
    std::stringstream text;
    text << in.rdbuf();
    std::vector<std::string> local;
    try {
      auto rules = parse_rules(text.str(), &local);
      policy.rules.insert(policy.rules.end(), rules.begin(), rules.end());
    }
    catch (const SyntaxError& e) {
      throw e.in_file(file.filename().string());
    }
    catch (const SemanticError& e) {
      throw SemanticError(file.filename().string() + ": " + e.what());
    }
    if (warnings) {
      for (auto& w : local)
        warnings->push_back(file.filename().string() + ": " + w);
    }
  }
  return policy;
}

} // namespace mps::schema
