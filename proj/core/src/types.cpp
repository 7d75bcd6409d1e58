#include "reserves/types.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "reserves/errors.hpp"

namespace reserves {

namespace {

const std::map<std::string, int> kEmptyHr;

// Canonical pool order: descending merit. Merit distinctness makes this a
// strict total order.
void sort_by_merit_desc(std::vector<Individual>& pool) {
  std::sort(pool.begin(), pool.end(),
            [](const Individual& a, const Individual& b) { return a.merit > b.merit; });
}

}  // namespace

int QuotaScheme::open_capacity() const {
  int reserved = 0;
  for (const auto& c : categories) reserved += c.capacity;
  return total - reserved;
}

int QuotaScheme::capacity(const std::string& v) const {
  if (v == kOpenCategory) return open_capacity();
  for (const auto& c : categories)
    if (c.name == v) return c.capacity;
  throw ContractError("unknown vertical category: " + v);
}

const std::map<std::string, int>& QuotaScheme::hr_quotas(const std::string& v) const {
  if (v == kOpenCategory) return open_hr;
  for (const auto& c : categories)
    if (c.name == v) return c.hr;
  throw ContractError("unknown vertical category: " + v);
}

bool QuotaScheme::has_category(const std::string& name) const {
  return std::any_of(categories.begin(), categories.end(),
                     [&](const CategoryQuota& c) { return c.name == name; });
}

std::vector<std::string> QuotaScheme::vertical_categories() const {
  std::vector<std::string> out{kOpenCategory};
  for (const auto& c : categories) out.push_back(c.name);
  return out;
}

const Individual& Instance::by_id(const std::string& id) const {
  for (const auto& i : pool)
    if (i.id == id) return i;
  throw ContractError("unknown individual id: " + id);
}

std::vector<Individual> Instance::eligible(const std::string& v) const {
  if (v == kOpenCategory) return pool;
  std::vector<Individual> out;
  for (const auto& i : pool)
    if (i.category && *i.category == v) out.push_back(i);
  return out;
}

std::vector<Individual> Instance::members(const std::string& c) const { return eligible(c); }

bool Allocation::is_selected(const std::string& id) const {
  for (const auto& [v, sel] : categories)
    if (std::find(sel.chosen.begin(), sel.chosen.end(), id) != sel.chosen.end()) return true;
  return false;
}

std::vector<std::string> Allocation::aggregate() const {
  std::vector<std::string> out;
  for (const auto& [v, sel] : categories)
    out.insert(out.end(), sel.chosen.begin(), sel.chosen.end());
  return out;
}

Instance validate_instance(std::vector<Individual> pool, QuotaScheme quotas) {
  std::vector<std::string> problems;

  if (quotas.total <= 0) problems.push_back("total positions must be positive");
  if (quotas.open_capacity() < 0)
    problems.push_back("reserved capacities exceed total positions");

  std::set<std::string> category_names;
  for (const auto& c : quotas.categories) {
    if (c.name.empty()) problems.push_back("empty category name");
    if (c.name == kOpenCategory)
      problems.push_back("category name 'open' is reserved");
    if (!category_names.insert(c.name).second)
      problems.push_back("duplicate category name: " + c.name);
    if (c.capacity < 0) problems.push_back("negative capacity for category " + c.name);
  }

  std::set<std::string> traits(quotas.trait_universe.begin(), quotas.trait_universe.end());
  if (traits.size() != quotas.trait_universe.size())
    problems.push_back("duplicate trait in trait universe");

  auto check_hr = [&](const std::string& v, const std::map<std::string, int>& hr, int cap) {
    int sum = 0;
    for (const auto& [t, q] : hr) {
      if (!traits.count(t)) problems.push_back("unknown trait '" + t + "' in HR quotas of " + v);
      if (q < 0) problems.push_back("negative HR quota for trait '" + t + "' in " + v);
      sum += q;
    }
    if (sum > cap)
      problems.push_back("HR quotas of " + v + " exceed its capacity (" +
                         std::to_string(sum) + " > " + std::to_string(cap) + ")");
  };
  if (quotas.open_capacity() >= 0) check_hr(kOpenCategory, quotas.open_hr, quotas.open_capacity());
  for (const auto& c : quotas.categories) check_hr(c.name, c.hr, c.capacity);

  std::set<std::string> ids;
  std::set<double> merits;
  bool overlapping = false;
  for (const auto& i : pool) {
    if (i.id.empty()) problems.push_back("empty individual id");
    if (!ids.insert(i.id).second) problems.push_back("duplicate id: " + i.id);
    if (i.merit < 0) problems.push_back("negative merit for " + i.id);
    if (!merits.insert(i.merit).second)
      problems.push_back("duplicate merit score shared by " + i.id);
    if (i.category && !category_names.count(*i.category))
      problems.push_back(i.id + " references undeclared category '" + *i.category + "'");
    for (const auto& t : i.traits)
      if (!traits.count(t))
        problems.push_back(i.id + " references undeclared trait '" + t + "'");
    if (i.traits.size() >= 2) overlapping = true;
  }

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& p : problems) msg << "\n  - " << p;
    throw ValidationError(msg.str());
  }

  sort_by_merit_desc(pool);
  return Instance{std::move(pool), std::move(quotas), overlapping};
}

}  // namespace reserves
