#include "reserves/rules.hpp"

#include <algorithm>

#include "reserves/errors.hpp"
#include "reserves/matching.hpp"

namespace reserves {

namespace {

std::vector<Individual> sorted_desc(std::vector<Individual> v) {
  std::sort(v.begin(), v.end(),
            [](const Individual& a, const Individual& b) { return a.merit > b.merit; });
  return v;
}

bool any_overlapping(const std::vector<Individual>& pool) {
  return std::any_of(pool.begin(), pool.end(),
                     [](const Individual& i) { return i.traits.size() >= 2; });
}

bool contains_id(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<Individual> without(const std::vector<Individual>& pool,
                                const std::vector<std::string>& removed) {
  std::vector<Individual> out;
  for (const auto& i : pool)
    if (!contains_id(removed, i.id)) out.push_back(i);
  return out;
}

// Traits of v with positive quota, in the supplied order if given (filtered
// to v's positive-quota traits, which must all be covered), otherwise in
// declared trait order.
std::vector<std::string> effective_order(const std::string& v, const QuotaScheme& quotas,
                                         const std::optional<std::vector<std::string>>& order) {
  const auto& hr = quotas.hr_quotas(v);
  std::vector<std::string> positive;
  for (const auto& t : quotas.trait_universe)
    if (auto it = hr.find(t); it != hr.end() && it->second > 0) positive.push_back(t);

  if (!order) return positive;

  std::vector<std::string> filtered;
  for (const auto& t : *order)
    if (std::find(positive.begin(), positive.end(), t) != positive.end()) {
      if (std::find(filtered.begin(), filtered.end(), t) != filtered.end())
        throw ContractError("trait '" + t + "' listed twice in the order for " + v);
      filtered.push_back(t);
    }
  if (filtered.size() != positive.size())
    throw ContractError("trait order for " + v + " must cover every trait with positive quota");
  return filtered;
}

std::optional<std::vector<std::string>> order_for(const TraitOrders& orders, const std::string& v) {
  auto it = orders.find(v);
  if (it == orders.end()) return std::nullopt;
  return it->second;
}

Selection finish_selection(const std::string& v, std::vector<Individual> chosen,
                           const QuotaScheme& quotas) {
  chosen = sorted_desc(std::move(chosen));
  Selection sel;
  for (const auto& i : chosen) sel.chosen.push_back(i.id);
  // The reported witness is always a maximum matching of the final set.
  HRGraph graph = build_hr_graph(v, chosen, quotas);
  sel.witness = max_trait_matching(graph).to_assignment(graph);
  return sel;
}

Allocation assemble(const std::string& rule, const Instance& inst,
                    std::map<std::string, Selection> selections) {
  Allocation alloc;
  alloc.rule = rule;
  alloc.categories = std::move(selections);
  for (const auto& i : inst.pool)
    if (!alloc.is_selected(i.id)) alloc.unassigned.push_back(i.id);
  return alloc;
}

// Shared second step of the two-step rules: each reserve-eligible category
// chooses from its members left over by the open round.
template <typename SingleCategoryRule>
Allocation two_step(const std::string& rule_name, const Instance& inst,
                    SingleCategoryRule&& per_category, const Selection& open) {
  std::map<std::string, Selection> sels;
  sels[kOpenCategory] = open;
  for (const auto& c : inst.quotas.categories)
    sels[c.name] = per_category(c.name, without(inst.members(c.name), open.chosen));
  return assemble(rule_name, inst, std::move(sels));
}

}  // namespace

std::optional<RuleKind> rule_from_token(const std::string& token) {
  if (token == "sci-akg") return RuleKind::kSciAkg;
  if (token == "sci-akg-original") return RuleKind::kSciAkgOriginal;
  if (token == "2smg") return RuleKind::kTwoStepMinimumGuarantee;
  if (token == "2smh") return RuleKind::kTwoStepMeritoriousHorizontal;
  if (token == "min-guarantee") return RuleKind::kMinimumGuarantee;
  if (token == "meritorious") return RuleKind::kMeritoriousHorizontal;
  return std::nullopt;
}

std::string rule_token(RuleKind rule) {
  switch (rule) {
    case RuleKind::kSciAkg: return "sci-akg";
    case RuleKind::kSciAkgOriginal: return "sci-akg-original";
    case RuleKind::kTwoStepMinimumGuarantee: return "2smg";
    case RuleKind::kTwoStepMeritoriousHorizontal: return "2smh";
    case RuleKind::kMinimumGuarantee: return "min-guarantee";
    case RuleKind::kMeritoriousHorizontal: return "meritorious";
  }
  throw ContractError("unknown rule kind");
}

Selection minimum_guarantee(const std::string& v, const std::vector<Individual>& pool,
                            const QuotaScheme& quotas,
                            const std::optional<std::vector<std::string>>& order) {
  if (any_overlapping(pool) && !order)
    throw ValidationError("minimum guarantee on overlapping traits requires an explicit "
                          "trait processing order for category " + v);

  auto sorted = sorted_desc(pool);
  const auto& hr = quotas.hr_quotas(v);
  const int cap = quotas.capacity(v);
  std::vector<Individual> chosen;
  std::vector<std::string> chosen_ids;

  // Step 1: per-trait minimum guarantees in processing order. An individual
  // selected for one trait is consumed and not re-counted for later traits.
  for (const auto& t : effective_order(v, quotas, order)) {
    int quota = hr.at(t);
    int taken = 0;
    for (const auto& i : sorted) {
      if (taken == quota) break;
      if (contains_id(chosen_ids, i.id) || !i.has_trait(t)) continue;
      chosen.push_back(i);
      chosen_ids.push_back(i.id);
      ++taken;
    }
  }

  // Step 2: merit fill for the unfilled positions.
  for (const auto& i : sorted) {
    if (static_cast<int>(chosen.size()) >= cap) break;
    if (!contains_id(chosen_ids, i.id)) {
      chosen.push_back(i);
      chosen_ids.push_back(i.id);
    }
  }
  return finish_selection(v, std::move(chosen), quotas);
}

std::set<std::string> meritorious_reserved(const std::vector<Individual>& pool,
                                           const QuotaScheme& quotas) {
  auto sorted = sorted_desc(pool);
  const int qo = quotas.open_capacity();
  std::set<std::string> out;
  for (int k = 0; k < static_cast<int>(sorted.size()) && k < qo; ++k)
    if (sorted[k].category) out.insert(sorted[k].id);
  return out;
}

Allocation sci_akg(const Instance& inst, const TraitOrders& orders) {
  auto meritorious = meritorious_reserved(inst.pool, inst.quotas);
  std::vector<Individual> open_pool;
  for (const auto& i : inst.pool)
    if (!i.category || meritorious.count(i.id)) open_pool.push_back(i);

  Selection open = minimum_guarantee(kOpenCategory, open_pool, inst.quotas,
                                     order_for(orders, kOpenCategory));
  return two_step("sci-akg", inst,
                  [&](const std::string& c, const std::vector<Individual>& left) {
                    return minimum_guarantee(c, left, inst.quotas, order_for(orders, c));
                  },
                  open);
}

Selection akg_has(const std::string& v, const std::vector<Individual>& tentative,
                  const std::vector<Individual>& adjustment_pool, const QuotaScheme& quotas,
                  const std::optional<std::vector<std::string>>& order) {
  const int cap = quotas.capacity(v);
  if (static_cast<int>(tentative.size()) != cap)
    throw ContractError("AKG-HAS requires exactly q^v tentative recipients for " + v);
  for (const auto& j : tentative)
    for (const auto& k : adjustment_pool) {
      if (j.id == k.id)
        throw ContractError("AKG-HAS tentative and adjustment sets overlap at " + j.id);
      if (k.merit > j.merit)
        throw ContractError("AKG-HAS adjustment candidate " + k.id +
                            " outranks tentative recipient " + j.id);
    }

  auto tent = sorted_desc(tentative);
  auto pool = sorted_desc(adjustment_pool);
  const auto& hr = quotas.hr_quotas(v);
  std::vector<std::string> finalized;  // union of the J^l
  std::vector<Individual> result;

  auto take_top = [&](const std::vector<Individual>& from, const std::string& trait, int n) {
    std::vector<Individual> got;
    for (const auto& i : from) {
      if (static_cast<int>(got.size()) == n) break;
      if (contains_id(finalized, i.id)) continue;
      if (trait.empty() || i.has_trait(trait)) got.push_back(i);
    }
    return got;
  };

  for (const auto& t : effective_order(v, quotas, order)) {
    const int quota = hr.at(t);
    auto survivors = take_top(tent, t, quota);
    std::vector<Individual> step_set = survivors;
    if (static_cast<int>(survivors.size()) < quota) {
      // Shortfall: pull the highest-merit trait holders from the adjustment
      // pool; the displaced tentative recipients fall out at finalization.
      auto brought_up = take_top(pool, t, quota - static_cast<int>(survivors.size()));
      step_set.insert(step_set.end(), brought_up.begin(), brought_up.end());
    }
    for (const auto& i : step_set) {
      finalized.push_back(i.id);
      result.push_back(i);
    }
  }

  // No-trait finalization: the highest-merit survivors of the original
  // tentative set fill whatever positions remain.
  auto rest = take_top(tent, "", cap - static_cast<int>(result.size()));
  result.insert(result.end(), rest.begin(), rest.end());
  return finish_selection(v, std::move(result), quotas);
}

Allocation sci_akg_original(const Instance& inst, const TraitOrders& orders) {
  const auto& quotas = inst.quotas;
  const int qo = quotas.open_capacity();

  // Step 1: open-category tentative assignment.
  if (static_cast<int>(inst.pool.size()) <= qo) {
    std::map<std::string, Selection> sels;
    sels[kOpenCategory] = finish_selection(kOpenCategory, inst.pool, quotas);
    for (const auto& c : quotas.categories) sels[c.name] = Selection{};
    return assemble("sci-akg-original", inst, std::move(sels));
  }
  std::vector<Individual> tentative_open(inst.pool.begin(), inst.pool.begin() + qo);

  // Step 2: horizontal adjustments over general-category leftovers.
  std::vector<Individual> open_adjust;
  for (std::size_t i = qo; i < inst.pool.size(); ++i)
    if (!inst.pool[i].category) open_adjust.push_back(inst.pool[i]);
  Selection open = akg_has(kOpenCategory, tentative_open, open_adjust, quotas,
                           order_for(orders, kOpenCategory));

  // Steps 3-4: per reserve-eligible category.
  std::map<std::string, Selection> sels;
  sels[kOpenCategory] = open;
  for (const auto& c : quotas.categories) {
    auto remaining = without(inst.members(c.name), open.chosen);
    if (static_cast<int>(remaining.size()) <= c.capacity) {
      sels[c.name] = finish_selection(c.name, remaining, quotas);
      continue;
    }
    std::vector<Individual> tentative(remaining.begin(), remaining.begin() + c.capacity);
    std::vector<Individual> adjust(remaining.begin() + c.capacity, remaining.end());
    sels[c.name] = akg_has(c.name, tentative, adjust, quotas, order_for(orders, c.name));
  }
  return assemble("sci-akg-original", inst, std::move(sels));
}

Allocation two_step_minimum_guarantee(const Instance& inst) {
  if (inst.overlapping)
    throw ValidationError("2SMG undefined under overlapping traits; use 2smh");
  Selection open = minimum_guarantee(kOpenCategory, inst.pool, inst.quotas);
  return two_step("2smg", inst,
                  [&](const std::string& c, const std::vector<Individual>& left) {
                    return minimum_guarantee(c, left, inst.quotas);
                  },
                  open);
}

Selection meritorious_horizontal(const std::string& v, const std::vector<Individual>& pool,
                                 const QuotaScheme& quotas) {
  auto sorted = sorted_desc(pool);
  const int cap = quotas.capacity(v);
  std::vector<Individual> chosen;
  std::vector<std::string> chosen_ids;

  // Step 1: greedy over the transversal matroid. Candidates are scanned by
  // descending merit with an incremental augmenting-path test; merit
  // distinctness makes each argmax unique.
  bool found = true;
  while (found && static_cast<int>(chosen.size()) < cap) {
    found = false;
    for (const auto& i : sorted) {
      if (contains_id(chosen_ids, i.id)) continue;
      if (increases_hr_utilization(v, chosen, i, quotas)) {
        chosen.push_back(i);
        chosen_ids.push_back(i.id);
        found = true;
        break;
      }
    }
  }

  // Step 2: merit fill.
  for (const auto& i : sorted) {
    if (static_cast<int>(chosen.size()) >= cap) break;
    if (!contains_id(chosen_ids, i.id)) {
      chosen.push_back(i);
      chosen_ids.push_back(i.id);
    }
  }
  return finish_selection(v, std::move(chosen), quotas);
}

Allocation two_step_meritorious_horizontal(const Instance& inst) {
  Selection open = meritorious_horizontal(kOpenCategory, inst.pool, inst.quotas);
  return two_step("2smh", inst,
                  [&](const std::string& c, const std::vector<Individual>& left) {
                    return meritorious_horizontal(c, left, inst.quotas);
                  },
                  open);
}

Allocation run_rule(RuleKind rule, const Instance& inst, const TraitOrders& orders) {
  switch (rule) {
    case RuleKind::kSciAkg:
      return sci_akg(inst, orders);
    case RuleKind::kSciAkgOriginal:
      return sci_akg_original(inst, orders);
    case RuleKind::kTwoStepMinimumGuarantee:
      return two_step_minimum_guarantee(inst);
    case RuleKind::kTwoStepMeritoriousHorizontal:
      return two_step_meritorious_horizontal(inst);
    case RuleKind::kMinimumGuarantee: {
      // Two-step application with a fixed processing sequence per category.
      Selection open = minimum_guarantee(kOpenCategory, inst.pool, inst.quotas,
                                         order_for(orders, kOpenCategory));
      Allocation a = two_step("min-guarantee", inst,
                              [&](const std::string& c, const std::vector<Individual>& left) {
                                return minimum_guarantee(c, left, inst.quotas,
                                                         order_for(orders, c));
                              },
                              open);
      return a;
    }
    case RuleKind::kMeritoriousHorizontal: {
      Allocation a = two_step_meritorious_horizontal(inst);
      a.rule = "meritorious";
      return a;
    }
  }
  throw ContractError("unknown rule kind");
}

}  // namespace reserves
