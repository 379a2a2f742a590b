#pragma once

#include "mps/schema/rule.hpp"

#include <set>

namespace mps::testing {

/// Reference semantics for one rule, by exhaustive search: try every
/// injective assignment of distinct signers to the all_of patterns, and accept
/// if the signers left over include at least k that match some `from`
/// pattern. Exponential; meant for small instances only.
inline bool
oracle_rule_accepts(const schema::SchemaRule& rule, const std::vector<Name>& signer_keys)
{
  std::set<Name> unique(signer_keys.begin(), signer_keys.end());
  std::vector<Name> signers(unique.begin(), unique.end());
  std::vector<bool> used(signers.size(), false);

  auto threshold_met = [&] {
    if (!rule.threshold)
      return true;
    size_t count = 0;
    for (size_t s = 0; s < signers.size(); ++s) {
      if (used[s])
        continue;
      for (const auto& p : rule.threshold->from) {
        if (p.matches(signers[s])) {
          ++count;
          break;
        }
      }
    }
    return count >= rule.threshold->k;
  };

  auto assign = [&](auto&& self, size_t pattern) -> bool {
    if (pattern == rule.all_of.size())
      return threshold_met();
    for (size_t s = 0; s < signers.size(); ++s) {
      if (used[s] || !rule.all_of[pattern].matches(signers[s]))
        continue;
      used[s] = true;
      bool ok = self(self, pattern + 1);
      used[s] = false;
      if (ok)
        return true;
    }
    return false;
  };
  return assign(assign, 0);
}

} // namespace mps::testing
