#pragma once

#include "mps/schema/certificate.hpp"
#include "mps/schema/rule.hpp"

namespace mps::schema {

/// No selection of known signers can satisfy a rule.
class UnsatisfiableError : public Error
{
public:
  UnsatisfiableError(const std::string& requirement, const std::string& why)
    : Error(requirement + ": " + why)
    , m_requirement(requirement)
  {}

  /// Text of the starved requirement (a pattern, or the threshold clause).
  const std::string& requirement() const noexcept { return m_requirement; }

private:
  std::string m_requirement;
};

/// One requirement of a rule with the known signers that can fill it.
struct PlanSlot
{
  std::string requirement;
  std::vector<Name> candidates; ///< known-signers file order
  size_t needed = 1;
};

/// Signer selection for one rule: one slot per all_of pattern (needed = 1),
/// then, if the rule has a threshold, one slot whose candidates match any
/// `from` pattern (needed = k).
struct SigningPlan
{
  SchemaRule rule;
  std::vector<PlanSlot> slots;
};

/// Throws UnsatisfiableError naming the first requirement that lacks enough
/// distinct candidates, or the rule as a whole if the requirements cannot be
/// met at the same time by distinct signers.
SigningPlan plan_signers(const SchemaRule& rule, const KnownSigners& known);

} // namespace mps::schema
