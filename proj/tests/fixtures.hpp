#pragma once

// Hand-worked fixture instances shared across the test suites.

#include <string>
#include <vector>

#include "reserves/types.hpp"

namespace fixtures {

inline reserves::Individual person(std::string id, double merit, std::string category = "",
                                   std::vector<std::string> traits = {}) {
  reserves::Individual i;
  i.id = std::move(id);
  i.merit = merit;
  if (!category.empty()) i.category = std::move(category);
  i.traits.insert(traits.begin(), traits.end());
  return i;
}

// Five applicants, one SC seat, two open seats with one HR-protected for
// women. Distilled flaw case for the SCI-AKG rule.
inline reserves::Instance example1() {
  reserves::QuotaScheme quotas;
  quotas.total = 3;
  quotas.categories = {{"SC", 1, {}}};
  quotas.open_hr = {{"WOMEN", 1}};
  quotas.trait_universe = {"WOMEN"};
  std::vector<reserves::Individual> pool = {
      person("m1g", 95), person("m2g", 90), person("m1c", 85, "SC"),
      person("w1c", 80, "SC", {"WOMEN"}), person("w1g", 75, "", {"WOMEN"})};
  return reserves::validate_instance(std::move(pool), std::move(quotas));
}

// Single category, two positions, one HR slot per trait; i1 holds both
// traits. Trait processing order changes the minimum-guarantee outcome.
inline reserves::Instance order_dependence_a() {
  reserves::QuotaScheme quotas;
  quotas.total = 2;
  quotas.open_hr = {{"t1", 1}, {"t2", 1}};
  quotas.trait_universe = {"t1", "t2"};
  std::vector<reserves::Individual> pool = {person("i1", 90, "", {"t1", "t2"}),
                                            person("i2", 85), person("i3", 80, "", {"t1"})};
  return reserves::validate_instance(std::move(pool), std::move(quotas));
}

// Same shape with a fourth applicant and three positions; the merit-best
// triple already accommodates both HR protections.
inline reserves::Instance order_dependence_b() {
  reserves::QuotaScheme quotas;
  quotas.total = 3;
  quotas.open_hr = {{"t1", 1}, {"t2", 1}};
  quotas.trait_universe = {"t1", "t2"};
  std::vector<reserves::Individual> pool = {
      person("i1", 90, "", {"t1", "t2"}), person("i2", 85), person("i3", 80, "", {"t1"}),
      person("i4", 75, "", {"t2"})};
  return reserves::validate_instance(std::move(pool), std::move(quotas));
}

}  // namespace fixtures
