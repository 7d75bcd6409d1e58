#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace reserves {

// Name of the open vertical category. Reserved: user-declared categories may
// not use it.
inline constexpr const char* kOpenCategory = "open";

// An applicant. `category` absent means general category (no VR eligibility).
struct Individual {
  std::string id;
  double merit = 0.0;
  std::optional<std::string> category;
  std::set<std::string> traits;

  bool has_trait(const std::string& t) const { return traits.count(t) > 0; }
};

struct CategoryQuota {
  std::string name;
  int capacity = 0;
  std::map<std::string, int> hr;  // trait -> minimum guarantee q^c_t
};

// Per-recruitment capacities: total q, reserve-eligible categories with their
// HR minimums, HR minimums for the open category. Open capacity is derived.
struct QuotaScheme {
  int total = 0;
  std::vector<CategoryQuota> categories;
  std::map<std::string, int> open_hr;       // trait -> q^o_t
  std::vector<std::string> trait_universe;  // declared order, canonical

  int open_capacity() const;
  // Capacity of a vertical category ("open" or a declared name).
  int capacity(const std::string& v) const;
  // HR minimums of a vertical category.
  const std::map<std::string, int>& hr_quotas(const std::string& v) const;
  bool has_category(const std::string& name) const;
  // All vertical categories, open first then declared order.
  std::vector<std::string> vertical_categories() const;
};

// A validated problem: pool sorted by descending merit, quotas, and the
// derived overlap class.
struct Instance {
  std::vector<Individual> pool;  // descending merit, all invariants checked
  QuotaScheme quotas;
  bool overlapping = false;  // true iff some individual has >= 2 traits

  const Individual& by_id(const std::string& id) const;
  // Individuals eligible for category v, descending merit.
  std::vector<Individual> eligible(const std::string& v) const;
  // Members of reserve-eligible category c, descending merit.
  std::vector<Individual> members(const std::string& c) const;
};

// Witness assignment of selected individuals to HR-protected slots.
// Values are (trait, slot index < q^v_t); injectivity over (trait, index).
using TraitAssignment = std::map<std::string, std::pair<std::string, int>>;

// Result of a single-category choice rule.
struct Selection {
  std::vector<std::string> chosen;  // descending merit
  TraitAssignment witness;
};

// Output of a (multi-category) choice rule.
struct Allocation {
  std::string rule;
  // Keyed by vertical category; iteration for output uses
  // QuotaScheme::vertical_categories().
  std::map<std::string, Selection> categories;
  std::vector<std::string> unassigned;  // descending merit

  bool is_selected(const std::string& id) const;
  std::vector<std::string> aggregate() const;  // all chosen ids
};

// Checks all pool/quota invariants, sorts the pool by descending merit, and
// derives the overlap class. Throws ValidationError listing offenders.
Instance validate_instance(std::vector<Individual> pool, QuotaScheme quotas);

}  // namespace reserves
