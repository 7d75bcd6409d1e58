#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reserves/types.hpp"

namespace reserves {

// Processing sequence of traits, per vertical category. Only consulted for
// overlapping instances; must cover every trait with positive quota in the
// categories it names.
using TraitOrders = std::map<std::string, std::vector<std::string>>;

// Rule tokens accepted by the CLI and the audit/compare drivers.
enum class RuleKind {
  kSciAkg,
  kSciAkgOriginal,
  kTwoStepMinimumGuarantee,   // 2SMG
  kTwoStepMeritoriousHorizontal,  // 2SMH
  kMinimumGuarantee,          // single-category, applied per category
  kMeritoriousHorizontal,     // single-category, applied per category
};

std::optional<RuleKind> rule_from_token(const std::string& token);
std::string rule_token(RuleKind rule);

// Category-v minimum guarantee choice rule. Step 1 reserves per-trait
// top-merit holders in `order`; a selected individual is consumed by the
// trait that selected her. Step 2 fills by merit. For inputs where every
// individual has at most one trait the order is immaterial and may be
// omitted; otherwise omitting it throws ValidationError.
Selection minimum_guarantee(const std::string& v,
                            const std::vector<Individual>& pool,
                            const QuotaScheme& quotas,
                            const std::optional<std::vector<std::string>>& order = std::nullopt);

// Reserve-eligible members among the q^o highest merit scores of the pool.
std::set<std::string> meritorious_reserved(const std::vector<Individual>& pool,
                                           const QuotaScheme& quotas);

// The rescinded Supreme Court rule: open = minimum guarantee over meritorious
// reserved + general candidates only, then each reserve category over its
// leftovers.
Allocation sci_akg(const Instance& inst, const TraitOrders& orders = {});

// The original tentative-assignment-then-adjustment formulation; equal to
// sci_akg on instances where every individual has at most one trait.
Allocation sci_akg_original(const Instance& inst, const TraitOrders& orders = {});

// AKG Horizontal Adjustment Subroutine. Preconditions (checked): |J| = q^v,
// J and K disjoint and eligible for v, every merit in J above every merit
// in K.
Selection akg_has(const std::string& v,
                  const std::vector<Individual>& tentative,
                  const std::vector<Individual>& adjustment_pool,
                  const QuotaScheme& quotas,
                  const std::optional<std::vector<std::string>>& order = std::nullopt);

// 2SMG: open = minimum guarantee over everyone, each reserve category over
// its leftovers. Defined for non-overlapping instances only; throws
// ValidationError on overlapping input (use 2SMH instead).
Allocation two_step_minimum_guarantee(const Instance& inst);

// Category-v meritorious horizontal choice rule: greedy selection of
// individuals that each raise max trait-matching cardinality, then merit
// fill.
Selection meritorious_horizontal(const std::string& v,
                                 const std::vector<Individual>& pool,
                                 const QuotaScheme& quotas);

// 2SMH: meritorious horizontal applied to open over everyone, then per
// reserve category over leftovers. Overlapping instances allowed.
Allocation two_step_meritorious_horizontal(const Instance& inst);

// Dispatches a rule token on a validated instance. The two single-category
// rules run per category on leftovers, two-step style, using the supplied
// trait orders.
Allocation run_rule(RuleKind rule, const Instance& inst, const TraitOrders& orders = {});

}  // namespace reserves
