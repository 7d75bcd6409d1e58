#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reserves/rules.hpp"
#include "reserves/types.hpp"

namespace reserves {

enum class Axiom { kNoJustifiedEnvy, kNonWasteful, kMaximalHR, kVRCompliance, kIncentiveCompatibility };

std::string axiom_name(Axiom a);  // NJE, NW, MHR, VRC, IC

// A privilege withholding: drop the category declaration and/or a subset of
// traits. At least one privilege is dropped.
struct Withholding {
  bool drop_category = false;
  std::set<std::string> dropped_traits;
};

struct AxiomViolation {
  Axiom axiom;
  std::vector<std::string> subset;  // the I exhibiting the violation, by id
  std::string category;             // vertical category involved ("" for IC)
  std::string individual;           // i (NJE/VRC), j (NW/MHR), or the withholder (IC)
  std::string rival;                // j for NJE, j for VRC condition 2; else ""
  std::optional<Withholding> withholding;  // IC only
  int vrc_condition = 0;            // 1..3 for VRC, 0 otherwise
  std::string detail;               // human-readable restatement
};

struct AxiomResult {
  bool pass = true;
  std::vector<AxiomViolation> violations;  // possibly truncated
  std::uint64_t total_violations = 0;
  std::uint64_t checked = 0;  // subsets examined
};

struct AuditReport {
  std::string rule;
  std::string scope;  // "single" | "all-subsets"
  std::map<std::string, AxiomResult> axioms;  // keyed by axiom_name
  bool all_pass() const;
};

// Per-allocation auditors. `pool` must be the individual set the allocation
// was produced from (ContractError otherwise).
std::vector<AxiomViolation> check_no_justified_envy(const Allocation& alloc,
                                                    const std::vector<Individual>& pool,
                                                    const QuotaScheme& quotas);
std::vector<AxiomViolation> check_non_wasteful(const Allocation& alloc,
                                               const std::vector<Individual>& pool,
                                               const QuotaScheme& quotas);
std::vector<AxiomViolation> check_maximal_hr(const Allocation& alloc,
                                             const std::vector<Individual>& pool,
                                             const QuotaScheme& quotas);
std::vector<AxiomViolation> check_vr_compliance(const Allocation& alloc,
                                                const std::vector<Individual>& pool,
                                                const QuotaScheme& quotas);

// Enumerates every withholding of every individual's privileges and flags
// individuals that a withholding turns from rejected into selected.
std::vector<AxiomViolation> check_incentive_compatibility(RuleKind rule,
                                                          const std::vector<Individual>& pool,
                                                          const QuotaScheme& quotas,
                                                          const TraitOrders& orders = {});

enum class AuditScope { kSingle, kAllSubsets };

struct AuditOptions {
  AuditScope scope = AuditScope::kSingle;
  int max_pool_for_subsets = 14;  // 2^14 subsets; refuse above this
  std::size_t max_reported_violations = 100;
  TraitOrders orders;
};

// Runs all five auditors on the rule's output. all-subsets scope reruns the
// rule and the four allocation axioms on every I subset of pool.
AuditReport full_audit(RuleKind rule, const Instance& inst, const AuditOptions& opts = {});

std::string audit_report_to_json(const AuditReport& report);

}  // namespace reserves
