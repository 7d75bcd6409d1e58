#include "reserves/generator.hpp"

#include <algorithm>
#include <string>

namespace reserves {

Instance random_instance(std::mt19937& rng, const GeneratorParams& params) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int n_traits = pick(0, params.max_traits);
  const int n_categories = pick(0, params.max_categories);

  QuotaScheme quotas;
  for (int t = 0; t < n_traits; ++t) quotas.trait_universe.push_back("t" + std::to_string(t + 1));

  int open_cap = pick(0, params.max_open_capacity);
  int reserved = 0;
  for (int c = 0; c < n_categories; ++c) {
    CategoryQuota cq;
    cq.name = "C" + std::to_string(c + 1);
    cq.capacity = pick(0, params.max_category_capacity);
    reserved += cq.capacity;
    quotas.categories.push_back(std::move(cq));
  }
  if (open_cap + reserved == 0) open_cap = 1;
  quotas.total = open_cap + reserved;

  auto fill_hr = [&](std::map<std::string, int>& hr, int capacity) {
    int budget = capacity;
    for (const auto& t : quotas.trait_universe) {
      if (budget == 0) break;
      int q = pick(0, budget);
      if (q > 0) hr[t] = q;
      budget -= q;
    }
  };
  fill_hr(quotas.open_hr, open_cap);
  for (auto& c : quotas.categories) fill_hr(c.hr, c.capacity);

  const int n = pick(1, params.max_individuals);
  std::vector<Individual> pool;
  for (int i = 0; i < n; ++i) {
    Individual ind;
    ind.id = "i" + std::to_string(i + 1);
    // Base gap of 1.0 dwarfs the 0.09 max jitter, so merits stay distinct
    // and positive for any pool size.
    ind.merit = n - i + pick(0, 9) * 0.01;
    if (n_categories > 0 && pick(0, 1) == 1)
      ind.category = quotas.categories[pick(0, n_categories - 1)].name;
    const int trait_cap = params.allow_overlapping ? n_traits : std::min(n_traits, 1);
    if (n_traits > 0) {
      // Random subset of at most trait_cap traits, biased toward having one.
      std::vector<std::string> shuffled = quotas.trait_universe;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const int count = pick(0, trait_cap);
      for (int t = 0; t < count; ++t) ind.traits.insert(shuffled[t]);
    }
    pool.push_back(std::move(ind));
  }

  return validate_instance(std::move(pool), std::move(quotas));
}

}  // namespace reserves
