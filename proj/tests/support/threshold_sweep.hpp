#pragma once

#include "schema_oracle.hpp"

#include <functional>

namespace mps::testing {

/// Six candidate signer key names and a pool of patterns over them: prefix
/// wildcards, role wildcards, a literal, a catch-all and one matching nothing.
inline std::vector<Name>
sweep_signers()
{
  return {Name("/A/a/KEY/1"), Name("/A/b/KEY/1"), Name("/B/a/KEY/1"),
          Name("/B/b/KEY/1"), Name("/C/a/KEY/1"), Name("/C/b/KEY/1")};
}

inline std::vector<schema::NamePattern>
sweep_patterns()
{
  std::vector<schema::NamePattern> out;
  for (const char* p : {"/A/*/KEY/*", "/B/*/KEY/*", "/C/*/KEY/*", "/*/a/KEY/*", "/*/b/KEY/*", "/A/a/KEY/1",
                        "/*/*/KEY/*", "/D/*/KEY/*"})
    out.push_back(schema::NamePattern::parse(p));
  return out;
}

struct SweepStats
{
  size_t rules = 0;
  size_t checks = 0;
  size_t disagreements = 0;
  size_t accepted = 0;
};

/// Every rule with 0..max_all_of all_of patterns (multisets from the pool),
/// optionally a threshold k in 1..max_k over 1..max_from distinct `from`
/// patterns, against every subset of the six candidate signers. Calls
/// `on_disagreement` for each instance where `candidate` differs from the oracle.
inline SweepStats
threshold_sweep(size_t max_all_of, size_t max_from, size_t max_k,
                const std::function<bool(const schema::SchemaRule&, const std::vector<Name>&)>& candidate,
                const std::function<void(const schema::SchemaRule&, const std::vector<Name>&)>& on_disagreement = {})
{
  auto signers = sweep_signers();
  auto pool = sweep_patterns();
  SweepStats stats;

  std::vector<std::vector<schema::NamePattern>> all_of_choices{{}};
  for (size_t i = 0; i < pool.size() && max_all_of >= 1; ++i) {
    all_of_choices.push_back({pool[i]});
    for (size_t j = i; j < pool.size() && max_all_of >= 2; ++j)
      all_of_choices.push_back({pool[i], pool[j]});
  }

  std::vector<std::vector<schema::NamePattern>> from_choices;
  for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
    if (static_cast<size_t>(__builtin_popcount(mask)) > max_from)
      continue;
    std::vector<schema::NamePattern> from;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1u << i))
        from.push_back(pool[i]);
    }
    from_choices.push_back(std::move(from));
  }

  auto run = [&](const schema::SchemaRule& rule) {
    ++stats.rules;
    for (unsigned subset = 0; subset < (1u << signers.size()); ++subset) {
      std::vector<Name> chosen;
      for (size_t s = 0; s < signers.size(); ++s) {
        if (subset & (1u << s))
          chosen.push_back(signers[s]);
      }
      bool expected = oracle_rule_accepts(rule, chosen);
      bool actual = candidate(rule, chosen);
      ++stats.checks;
      stats.accepted += expected;
      if (expected != actual) {
        ++stats.disagreements;
        if (on_disagreement)
          on_disagreement(rule, chosen);
      }
    }
  };

  schema::SchemaRule rule;
  rule.data_profile = schema::NamePattern::parse("/data/*");
  for (const auto& all_of : all_of_choices) {
    rule.all_of = all_of;
    if (!all_of.empty()) {
      rule.threshold.reset();
      run(rule);
    }
    for (const auto& from : from_choices) {
      for (size_t k = 1; k <= max_k; ++k) {
        rule.threshold = schema::Threshold{k, from};
        run(rule);
      }
    }
  }
  return stats;
}

} // namespace mps::testing
