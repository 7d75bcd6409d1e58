#include "reserves/axioms.hpp"

#include <algorithm>

#include "nlohmann/json.hpp"
#include "reserves/errors.hpp"
#include "reserves/matching.hpp"

namespace reserves {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<Individual> by_ids(const std::vector<Individual>& pool,
                               const std::vector<std::string>& ids) {
  std::vector<Individual> out;
  for (const auto& id : ids) {
    auto it = std::find_if(pool.begin(), pool.end(),
                           [&](const Individual& i) { return i.id == id; });
    if (it == pool.end()) throw ContractError("allocation selects unknown id " + id);
    out.push_back(*it);
  }
  return out;
}

bool eligible_for(const Individual& i, const std::string& v) {
  return v == kOpenCategory || (i.category && *i.category == v);
}

std::vector<std::string> pool_ids(const std::vector<Individual>& pool) {
  std::vector<std::string> ids;
  for (const auto& i : pool) ids.push_back(i.id);
  return ids;
}

void check_consistency(const Allocation& alloc, const std::vector<Individual>& pool) {
  for (const auto& [v, sel] : alloc.categories) by_ids(pool, sel.chosen);
}

std::vector<Individual> swap_in(const std::vector<Individual>& base, const Individual& out,
                                const Individual& in) {
  std::vector<Individual> result;
  for (const auto& i : base)
    if (i.id != out.id) result.push_back(i);
  result.push_back(in);
  return result;
}

// All withholdings of i's privileges: drop the category declaration and/or
// any nonempty subset of traits (misreporting upward is not modeled).
std::vector<Withholding> withholdings_of(const Individual& i) {
  std::vector<std::string> traits(i.traits.begin(), i.traits.end());
  std::vector<Withholding> out;
  const std::size_t n = traits.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (bool drop_cat : {false, true}) {
      if (drop_cat && !i.category) continue;
      if (!drop_cat && mask == 0) continue;  // at least one privilege dropped
      Withholding w;
      w.drop_category = drop_cat;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) w.dropped_traits.insert(traits[b]);
      out.push_back(std::move(w));
    }
  }
  return out;
}

Individual apply_withholding(const Individual& i, const Withholding& w) {
  Individual out = i;
  if (w.drop_category) out.category.reset();
  for (const auto& t : w.dropped_traits) out.traits.erase(t);
  return out;
}

// Builds a sub-instance from an already-validated pool without re-running
// full validation.
Instance sub_instance(std::vector<Individual> pool, const QuotaScheme& quotas) {
  std::sort(pool.begin(), pool.end(),
            [](const Individual& a, const Individual& b) { return a.merit > b.merit; });
  bool overlapping = std::any_of(pool.begin(), pool.end(),
                                 [](const Individual& i) { return i.traits.size() >= 2; });
  return Instance{std::move(pool), quotas, overlapping};
}

}  // namespace

std::string axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kNoJustifiedEnvy: return "NJE";
    case Axiom::kNonWasteful: return "NW";
    case Axiom::kMaximalHR: return "MHR";
    case Axiom::kVRCompliance: return "VRC";
    case Axiom::kIncentiveCompatibility: return "IC";
  }
  throw ContractError("unknown axiom");
}

bool AuditReport::all_pass() const {
  return std::all_of(axioms.begin(), axioms.end(),
                     [](const auto& kv) { return kv.second.pass; });
}

std::vector<AxiomViolation> check_no_justified_envy(const Allocation& alloc,
                                                    const std::vector<Individual>& pool,
                                                    const QuotaScheme& quotas) {
  check_consistency(alloc, pool);
  std::vector<AxiomViolation> out;
  for (const auto& [v, sel] : alloc.categories) {
    auto chosen = by_ids(pool, sel.chosen);
    const int n_chosen = hr_utilization(v, chosen, quotas);
    for (const auto& i : chosen) {
      for (const auto& j : pool) {
        if (!eligible_for(j, v) || alloc.is_selected(j.id)) continue;
        if (j.merit <= i.merit) continue;
        if (hr_utilization(v, swap_in(chosen, i, j), quotas) >= n_chosen) {
          AxiomViolation viol;
          viol.axiom = Axiom::kNoJustifiedEnvy;
          viol.subset = pool_ids(pool);
          viol.category = v;
          viol.individual = i.id;
          viol.rival = j.id;
          viol.detail = j.id + " outranks selected " + i.id + " in " + v +
                        " and the swap does not reduce HR utilization";
          out.push_back(std::move(viol));
        }
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_non_wasteful(const Allocation& alloc,
                                               const std::vector<Individual>& pool,
                                               const QuotaScheme& quotas) {
  check_consistency(alloc, pool);
  std::vector<AxiomViolation> out;
  for (const auto& [v, sel] : alloc.categories) {
    if (static_cast<int>(sel.chosen.size()) >= quotas.capacity(v)) continue;
    for (const auto& j : pool) {
      if (alloc.is_selected(j.id) || !eligible_for(j, v)) continue;
      AxiomViolation viol;
      viol.axiom = Axiom::kNonWasteful;
      viol.subset = pool_ids(pool);
      viol.category = v;
      viol.individual = j.id;
      viol.detail = j.id + " is unassigned while " + v + " has an idle position";
      out.push_back(std::move(viol));
    }
  }
  return out;
}

std::vector<AxiomViolation> check_maximal_hr(const Allocation& alloc,
                                             const std::vector<Individual>& pool,
                                             const QuotaScheme& quotas) {
  check_consistency(alloc, pool);
  std::vector<AxiomViolation> out;
  for (const auto& [v, sel] : alloc.categories) {
    auto chosen = by_ids(pool, sel.chosen);
    for (const auto& j : pool) {
      if (alloc.is_selected(j.id) || !eligible_for(j, v)) continue;
      if (increases_hr_utilization(v, chosen, j, quotas)) {
        AxiomViolation viol;
        viol.axiom = Axiom::kMaximalHR;
        viol.subset = pool_ids(pool);
        viol.category = v;
        viol.individual = j.id;
        viol.detail = "unassigned " + j.id + " would raise HR utilization of " + v;
        out.push_back(std::move(viol));
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_vr_compliance(const Allocation& alloc,
                                                const std::vector<Individual>& pool,
                                                const QuotaScheme& quotas) {
  check_consistency(alloc, pool);
  std::vector<AxiomViolation> out;
  auto open_it = alloc.categories.find(kOpenCategory);
  std::vector<Individual> open_chosen =
      open_it == alloc.categories.end() ? std::vector<Individual>{}
                                        : by_ids(pool, open_it->second.chosen);
  const int n_open = hr_utilization(kOpenCategory, open_chosen, quotas);
  const int qo = quotas.open_capacity();

  for (const auto& c : quotas.categories) {
    auto it = alloc.categories.find(c.name);
    if (it == alloc.categories.end()) continue;
    for (const auto& i : by_ids(pool, it->second.chosen)) {
      if (static_cast<int>(open_chosen.size()) != qo) {
        AxiomViolation viol;
        viol.axiom = Axiom::kVRCompliance;
        viol.subset = pool_ids(pool);
        viol.category = c.name;
        viol.individual = i.id;
        viol.vrc_condition = 1;
        viol.detail = i.id + " holds a " + c.name + " seat while open seats are unfilled";
        out.push_back(std::move(viol));
      }
      for (const auto& j : open_chosen) {
        if (j.merit >= i.merit) continue;
        if (hr_utilization(kOpenCategory, swap_in(open_chosen, j, i), quotas) >= n_open) {
          AxiomViolation viol;
          viol.axiom = Axiom::kVRCompliance;
          viol.subset = pool_ids(pool);
          viol.category = c.name;
          viol.individual = i.id;
          viol.rival = j.id;
          viol.vrc_condition = 2;
          viol.detail = i.id + " uses a " + c.name + " seat while lower-merit " + j.id +
                        " holds an open seat without an HR justification";
          out.push_back(std::move(viol));
        }
      }
      std::vector<Individual> extended = open_chosen;
      extended.push_back(i);
      if (hr_utilization(kOpenCategory, extended, quotas) != n_open) {
        AxiomViolation viol;
        viol.axiom = Axiom::kVRCompliance;
        viol.subset = pool_ids(pool);
        viol.category = c.name;
        viol.individual = i.id;
        viol.vrc_condition = 3;
        viol.detail = i.id + " could raise open-category HR utilization but uses a " +
                      c.name + " seat";
        out.push_back(std::move(viol));
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_incentive_compatibility(RuleKind rule,
                                                          const std::vector<Individual>& pool,
                                                          const QuotaScheme& quotas,
                                                          const TraitOrders& orders) {
  Instance inst = sub_instance(pool, quotas);
  Allocation truthful = run_rule(rule, inst, orders);
  std::vector<AxiomViolation> out;

  for (const auto& i : pool) {
    if (truthful.is_selected(i.id)) continue;  // cannot gain what she already has
    for (const auto& w : withholdings_of(i)) {
      std::vector<Individual> variant_pool;
      for (const auto& other : pool)
        variant_pool.push_back(other.id == i.id ? apply_withholding(i, w) : other);
      Allocation variant;
      try {
        variant = run_rule(rule, sub_instance(std::move(variant_pool), quotas), orders);
      } catch (const std::exception& e) {
        throw ContractError("rule '" + rule_token(rule) + "' failed on a withholding variant of " +
                            i.id + ": " + e.what());
      }
      if (variant.is_selected(i.id)) {
        AxiomViolation viol;
        viol.axiom = Axiom::kIncentiveCompatibility;
        viol.subset = pool_ids(pool);
        viol.individual = i.id;
        viol.withholding = w;
        std::string what = w.drop_category ? "category " + i.category.value_or("") : "";
        for (const auto& t : w.dropped_traits) what += (what.empty() ? "" : ", ") + ("trait " + t);
        viol.detail = i.id + " gains a position by withholding " + what;
        out.push_back(std::move(viol));
      }
    }
  }
  return out;
}

AuditReport full_audit(RuleKind rule, const Instance& inst, const AuditOptions& opts) {
  AuditReport report;
  report.rule = rule_token(rule);
  report.scope = opts.scope == AuditScope::kSingle ? "single" : "all-subsets";

  const std::size_t n = inst.pool.size();
  if (opts.scope == AuditScope::kAllSubsets &&
      static_cast<int>(n) > opts.max_pool_for_subsets)
    throw ValidationError("pool of " + std::to_string(n) +
                          " exceeds the all-subsets bound of " +
                          std::to_string(opts.max_pool_for_subsets) +
                          "; raise --max-individuals or use --scope single");

  for (Axiom a : {Axiom::kNoJustifiedEnvy, Axiom::kNonWasteful, Axiom::kMaximalHR,
                  Axiom::kVRCompliance, Axiom::kIncentiveCompatibility})
    report.axioms[axiom_name(a)] = AxiomResult{};

  auto record = [&](Axiom a, std::vector<AxiomViolation> viols) {
    auto& res = report.axioms[axiom_name(a)];
    res.checked += 1;
    res.total_violations += viols.size();
    for (auto& v : viols) {
      if (res.violations.size() < opts.max_reported_violations)
        res.violations.push_back(std::move(v));
      res.pass = false;
    }
  };

  auto audit_pool = [&](const std::vector<Individual>& pool) {
    Instance sub = sub_instance(pool, inst.quotas);
    Allocation alloc = run_rule(rule, sub, opts.orders);
    record(Axiom::kNoJustifiedEnvy, check_no_justified_envy(alloc, sub.pool, inst.quotas));
    record(Axiom::kNonWasteful, check_non_wasteful(alloc, sub.pool, inst.quotas));
    record(Axiom::kMaximalHR, check_maximal_hr(alloc, sub.pool, inst.quotas));
    record(Axiom::kVRCompliance, check_vr_compliance(alloc, sub.pool, inst.quotas));
    record(Axiom::kIncentiveCompatibility,
           check_incentive_compatibility(rule, pool, inst.quotas, opts.orders));
  };

  if (opts.scope == AuditScope::kSingle) {
    audit_pool(inst.pool);
  } else {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<Individual> subset;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) subset.push_back(inst.pool[b]);
      audit_pool(subset);
    }
  }
  return report;
}

std::string audit_report_to_json(const AuditReport& report) {
  ordered_json doc;
  doc["rule"] = report.rule;
  doc["scope"] = report.scope;
  doc["axioms"] = ordered_json::object();
  for (const auto& [name, res] : report.axioms) {
    ordered_json ja;
    ja["status"] = res.pass ? "pass" : "fail";
    ja["checked"] = res.checked;
    ja["total_violations"] = res.total_violations;
    ja["violations"] = ordered_json::array();
    for (const auto& v : res.violations) {
      ordered_json jv;
      jv["subset"] = v.subset;
      if (!v.category.empty()) jv["category"] = v.category;
      jv["individual"] = v.individual;
      if (!v.rival.empty()) jv["rival"] = v.rival;
      if (v.vrc_condition) jv["condition"] = v.vrc_condition;
      if (v.withholding) {
        ordered_json jw;
        jw["drop_category"] = v.withholding->drop_category;
        jw["dropped_traits"] = std::vector<std::string>(v.withholding->dropped_traits.begin(),
                                                        v.withholding->dropped_traits.end());
        jv["withholding"] = jw;
      }
      jv["detail"] = v.detail;
      ja["violations"].push_back(jv);
    }
    doc["axioms"][name] = ja;
  }
  return doc.dump(2) + "\n";
}

}  // namespace reserves
