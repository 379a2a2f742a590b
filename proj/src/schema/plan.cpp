#include "mps/schema/plan.hpp"

#include <algorithm>

namespace mps::schema {

namespace {

std::string
threshold_label(const Threshold& t)
{
  std::string out = "at-least-num " + std::to_string(t.k) + " from {";
  for (const auto& p : t.from)
    out += " " + p.to_string();
  return out + " }";
}

} // namespace

SigningPlan
plan_signers(const SchemaRule& rule, const KnownSigners& known)
{
  SigningPlan plan{rule, {}};
  for (const auto& pattern : rule.all_of) {
    PlanSlot slot{pattern.to_string(), known.matching(pattern), 1};
    if (slot.candidates.empty())
      throw UnsatisfiableError(slot.requirement, "no known signer matches");
    plan.slots.push_back(std::move(slot));
  }
  if (rule.threshold) {
    PlanSlot slot{threshold_label(*rule.threshold), {}, rule.threshold->k};
    for (const auto& cert : known.certificates()) {
      bool eligible = std::any_of(rule.threshold->from.begin(), rule.threshold->from.end(),
                                  [&](const NamePattern& p) { return p.matches(cert.key_name); });
      if (eligible)
        slot.candidates.push_back(cert.key_name);
    }
    if (slot.candidates.size() < slot.needed)
      throw UnsatisfiableError(slot.requirement, std::to_string(slot.candidates.size()) +
                                                   " matching known signers, " + std::to_string(slot.needed) +
                                                   " needed");
    plan.slots.push_back(std::move(slot));
  }

  std::vector<Name> everyone;
  for (const auto& cert : known.certificates())
    everyone.push_back(cert.key_name);
  if (!rule_accepts(rule, everyone))
    throw UnsatisfiableError("data-profile " + rule.data_profile.to_string(),
                             "the known signers cannot fill every requirement with distinct signers");
  return plan;
}

} // namespace mps::schema
