#include "reserves/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "reserves/errors.hpp"

namespace reserves::oracle {

namespace {

using Mask = unsigned;

// Recursion over left vertices: match to any free neighbor or skip.
int best_from(const HRGraph& graph, int u, std::vector<bool>& used) {
  if (u == graph.left_size()) return 0;
  int best = best_from(graph, u + 1, used);  // leave u unmatched
  for (int j : graph.edges[u]) {
    if (used[j]) continue;
    used[j] = true;
    best = std::max(best, 1 + best_from(graph, u + 1, used));
    used[j] = false;
  }
  return best;
}

// Assign each individual to one of her traits (or none); count slots used,
// capped per trait. Exhaustive, no flow/matching machinery.
int utilization_from(const std::vector<Individual>& individuals, std::size_t k,
                     std::map<std::string, int>& used,
                     const std::map<std::string, int>& hr_quotas) {
  if (k == individuals.size()) return 0;
  int best = utilization_from(individuals, k + 1, used, hr_quotas);
  for (const auto& t : individuals[k].traits) {
    auto q = hr_quotas.find(t);
    if (q == hr_quotas.end() || used[t] >= q->second) continue;
    ++used[t];
    best = std::max(best, 1 + utilization_from(individuals, k + 1, used, hr_quotas));
    --used[t];
  }
  return best;
}

// Independence and rank of every subset of the ground set, precomputed so the
// exhaustive property checks stay polynomial in the subset count.
struct CachedMatroid {
  std::vector<std::string> ground;
  std::vector<char> indep;  // by mask
  std::vector<int> rank;    // by mask

  explicit CachedMatroid(const IndependenceOracle& m) : ground(m.ground_set) {
    const std::size_t n = ground.size();
    indep.resize(std::size_t{1} << n);
    rank.resize(std::size_t{1} << n);
    for (Mask mask = 0; mask < (Mask{1} << n); ++mask) {
      indep[mask] = m.independent(to_set(mask)) ? 1 : 0;
      if (indep[mask]) {
        rank[mask] = std::popcount(mask);
      } else {
        int best = 0;
        for (std::size_t b = 0; b < n; ++b)
          if (mask & (Mask{1} << b)) best = std::max(best, rank[mask ^ (Mask{1} << b)]);
        rank[mask] = best;
      }
    }
  }

  std::size_t size() const { return ground.size(); }
  Mask full() const { return (Mask{1} << ground.size()) - 1; }

  std::set<std::string> to_set(Mask mask) const {
    std::set<std::string> s;
    for (std::size_t b = 0; b < ground.size(); ++b)
      if (mask & (Mask{1} << b)) s.insert(ground[b]);
    return s;
  }

  Mask greedy(Mask restricted, const std::map<std::string, double>& weights) const {
    std::vector<std::size_t> order;
    for (std::size_t b = 0; b < ground.size(); ++b)
      if (restricted & (Mask{1} << b)) order.push_back(b);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return weights.at(ground[a]) > weights.at(ground[b]);
    });
    Mask chosen = 0;
    for (std::size_t b : order)
      if (indep[chosen | (Mask{1} << b)]) chosen |= (Mask{1} << b);
    return chosen;
  }
};

std::string join(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& e : s) out += (out.size() > 1 ? "," : "") + e;
  return out + "}";
}

// Descending weights of a mask's elements.
std::vector<double> weight_profile(const CachedMatroid& m, Mask mask,
                                   const std::map<std::string, double>& weights) {
  std::vector<double> out;
  for (std::size_t b = 0; b < m.size(); ++b)
    if (mask & (Mask{1} << b)) out.push_back(weights.at(m.ground[b]));
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

int brute_force_matching(const HRGraph& graph) {
  if (graph.left_size() > 12 || graph.right_size() > 12)
    throw ContractError("brute_force_matching bound is 12x12");
  std::vector<bool> used(graph.right.size(), false);
  return best_from(graph, 0, used);
}

int brute_force_utilization(const std::vector<Individual>& individuals,
                            const std::map<std::string, int>& hr_quotas) {
  if (individuals.size() > 12)
    throw ContractError("brute_force_utilization bound is 12 individuals");
  std::map<std::string, int> used;
  return utilization_from(individuals, 0, used, hr_quotas);
}

std::vector<Allocation> enumerate_axiomatic_allocations(const Instance& inst) {
  if (inst.pool.size() > 10)
    throw ContractError("enumerate_axiomatic_allocations bound is 10 individuals");

  const auto& quotas = inst.quotas;
  const auto verticals = quotas.vertical_categories();
  const std::size_t n = inst.pool.size();

  // choice[i]: 0 = unassigned, 1 = open, 2 = own reserve category (if any).
  std::vector<int> choice(n, 0);
  std::vector<Allocation> survivors;

  auto n_of = [&](const std::vector<Individual>& set_v, const std::string& v) {
    return brute_force_utilization(set_v, quotas.hr_quotas(v));
  };

  auto evaluate = [&]() {
    std::map<std::string, std::vector<Individual>> chosen;
    for (const auto& v : verticals) chosen[v] = {};
    for (std::size_t i = 0; i < n; ++i) {
      if (choice[i] == 0) continue;
      if (choice[i] == 1) chosen[kOpenCategory].push_back(inst.pool[i]);
      else chosen[*inst.pool[i].category].push_back(inst.pool[i]);
    }
    for (const auto& v : verticals)
      if (static_cast<int>(chosen[v].size()) > quotas.capacity(v)) return;

    auto selected = [&](const Individual& j) { return choice[&j - inst.pool.data()] != 0; };
    auto eligible = [&](const Individual& j, const std::string& v) {
      return v == kOpenCategory || (j.category && *j.category == v);
    };

    // Non-wastefulness.
    for (const auto& v : verticals) {
      if (static_cast<int>(chosen[v].size()) >= quotas.capacity(v)) continue;
      for (const auto& j : inst.pool)
        if (!selected(j) && eligible(j, v)) return;
    }
    // Maximal HR accommodation.
    for (const auto& v : verticals) {
      const int base = n_of(chosen[v], v);
      for (const auto& j : inst.pool) {
        if (selected(j) || !eligible(j, v)) continue;
        auto ext = chosen[v];
        ext.push_back(j);
        if (n_of(ext, v) != base) return;
      }
    }
    // No justified envy.
    for (const auto& v : verticals) {
      const int base = n_of(chosen[v], v);
      for (const auto& i : chosen[v]) {
        for (const auto& j : inst.pool) {
          if (selected(j) || !eligible(j, v) || j.merit <= i.merit) continue;
          std::vector<Individual> swapped;
          for (const auto& k : chosen[v])
            if (k.id != i.id) swapped.push_back(k);
          swapped.push_back(j);
          if (n_of(swapped, v) >= base) return;
        }
      }
    }
    // Compliance with VR protections.
    const int n_open = n_of(chosen[kOpenCategory], kOpenCategory);
    for (const auto& c : quotas.categories) {
      for (const auto& i : chosen[c.name]) {
        if (static_cast<int>(chosen[kOpenCategory].size()) != quotas.open_capacity()) return;
        for (const auto& j : chosen[kOpenCategory]) {
          if (j.merit >= i.merit) continue;
          std::vector<Individual> swapped;
          for (const auto& k : chosen[kOpenCategory])
            if (k.id != j.id) swapped.push_back(k);
          swapped.push_back(i);
          if (n_of(swapped, kOpenCategory) >= n_open) return;
        }
        auto ext = chosen[kOpenCategory];
        ext.push_back(i);
        if (n_of(ext, kOpenCategory) != n_open) return;
      }
    }

    Allocation alloc;
    alloc.rule = "oracle";
    for (const auto& v : verticals) {
      Selection sel;
      auto sorted = chosen[v];
      std::sort(sorted.begin(), sorted.end(),
                [](const Individual& a, const Individual& b) { return a.merit > b.merit; });
      for (const auto& i : sorted) sel.chosen.push_back(i.id);
      alloc.categories[v] = std::move(sel);
    }
    for (const auto& i : inst.pool)
      if (!alloc.is_selected(i.id)) alloc.unassigned.push_back(i.id);
    survivors.push_back(std::move(alloc));
  };

  // Enumerate every assignment of individuals to {none, open, own category}.
  std::vector<std::size_t> radix(n, 2);
  for (std::size_t i = 0; i < n; ++i)
    if (inst.pool[i].category) radix[i] = 3;
  std::size_t total = 1;
  for (auto r : radix) total *= r;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rem = code;
    for (std::size_t i = 0; i < n; ++i) {
      choice[i] = static_cast<int>(rem % radix[i]);
      rem /= radix[i];
    }
    evaluate();
  }
  return survivors;
}

std::vector<std::vector<Individual>> enumerate_maximally_accommodating(
    const std::vector<Individual>& pool, const std::map<std::string, int>& hr_quotas,
    int capacity) {
  if (pool.size() > 12)
    throw ContractError("enumerate_maximally_accommodating bound is 12 individuals");
  std::vector<std::vector<Individual>> out;
  const std::size_t n = pool.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Individual> chosen, rest;
    for (std::size_t b = 0; b < n; ++b)
      (mask & (std::size_t{1} << b) ? chosen : rest).push_back(pool[b]);
    if (static_cast<int>(chosen.size()) > capacity) continue;
    const int base = brute_force_utilization(chosen, hr_quotas);
    bool maximal = true;
    for (const auto& j : rest) {
      auto ext = chosen;
      ext.push_back(j);
      if (brute_force_utilization(ext, hr_quotas) != base) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(std::move(chosen));
  }
  return out;
}

bool gale_dominates(const std::vector<Individual>& x, const std::vector<Individual>& y) {
  if (x.size() < y.size()) return false;
  auto xs = x, ys = y;
  auto desc = [](const Individual& a, const Individual& b) { return a.merit > b.merit; };
  std::sort(xs.begin(), xs.end(), desc);
  std::sort(ys.begin(), ys.end(), desc);
  for (std::size_t k = 0; k < ys.size(); ++k)
    if (xs[k].id != ys[k].id && xs[k].merit <= ys[k].merit) return false;
  return true;
}

IndependenceOracle transversal_matroid(const std::vector<Individual>& individuals,
                                       const std::map<std::string, int>& hr_quotas) {
  IndependenceOracle m;
  for (const auto& i : individuals) m.ground_set.push_back(i.id);
  auto pool = individuals;
  m.independent = [pool, hr_quotas](const std::set<std::string>& subset) {
    std::vector<Individual> members;
    for (const auto& i : pool)
      if (subset.count(i.id)) members.push_back(i);
    if (members.size() != subset.size())
      throw ContractError("subset contains ids outside the ground set");
    return brute_force_utilization(members, hr_quotas) == static_cast<int>(members.size());
  };
  return m;
}

std::set<std::string> greedy_choice(const IndependenceOracle& m,
                                    const std::map<std::string, double>& weights,
                                    const std::set<std::string>& subset) {
  {
    std::set<double> seen;
    for (const auto& e : subset)
      if (!seen.insert(weights.at(e)).second)
        throw ContractError("greedy_choice requires distinct weights");
  }
  std::vector<std::string> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
    return weights.at(a) > weights.at(b);
  });
  std::set<std::string> chosen;
  for (const auto& e : order) {
    auto trial = chosen;
    trial.insert(e);
    if (m.independent(trial)) chosen = std::move(trial);
  }
  return chosen;
}

CheckReport check_matroid_axioms(const IndependenceOracle& m) {
  if (m.ground_set.size() > 6) throw ContractError("check_matroid_axioms bound is 6 elements");
  CheckReport report;
  CachedMatroid cm(m);
  const std::size_t n = cm.size();

  // M1.
  if (!cm.indep[0]) report.fail("M1: empty set not independent");

  // M2: subset-closed.
  for (Mask s = 0; s <= cm.full(); ++s) {
    if (!cm.indep[s]) continue;
    for (std::size_t b = 0; b < n; ++b)
      if ((s & (Mask{1} << b)) && !cm.indep[s ^ (Mask{1} << b)])
        report.fail("M2: " + join(cm.to_set(s)) + " independent but a subset is not");
  }

  // M3: exchange.
  for (Mask a = 0; a <= cm.full(); ++a) {
    if (!cm.indep[a]) continue;
    for (Mask b = 0; b <= cm.full(); ++b) {
      if (!cm.indep[b] || std::popcount(a) >= std::popcount(b)) continue;
      bool extended = false;
      for (std::size_t e = 0; e < n; ++e)
        if ((b & (Mask{1} << e)) && !(a & (Mask{1} << e)) && cm.indep[a | (Mask{1} << e)]) {
          extended = true;
          break;
        }
      if (!extended)
        report.fail("M3: no element of " + join(cm.to_set(b)) + " extends " + join(cm.to_set(a)));
    }
  }

  // Bases: maximal independent sets.
  std::vector<Mask> bases;
  for (Mask s = 0; s <= cm.full(); ++s) {
    if (!cm.indep[s]) continue;
    bool maximal = true;
    for (std::size_t e = 0; e < n; ++e)
      if (!(s & (Mask{1} << e)) && cm.indep[s | (Mask{1} << e)]) maximal = false;
    if (maximal) bases.push_back(s);
  }
  auto is_base = [&](Mask s) { return std::find(bases.begin(), bases.end(), s) != bases.end(); };

  // B2': symmetric multi-element base exchange.
  for (Mask b1 : bases)
    for (Mask b2 : bases) {
      const Mask diff1 = b1 & ~b2;
      const Mask diff2 = b2 & ~b1;
      for (Mask e1 = diff1;; e1 = (e1 - 1) & diff1) {
        bool witnessed = false;
        for (Mask e2 = diff2;; e2 = (e2 - 1) & diff2) {
          if (is_base((b1 & ~e1) | e2) && is_base((b2 & ~e2) | e1)) witnessed = true;
          if (e2 == 0 || witnessed) break;
        }
        if (!witnessed)
          report.fail("B2': no exchange for " + join(cm.to_set(e1)) + " between " +
                      join(cm.to_set(b1)) + " and " + join(cm.to_set(b2)));
        if (e1 == 0) break;
      }
    }

  // R1-R3 on the rank function.
  for (Mask x = 0; x <= cm.full(); ++x) {
    if (cm.rank[x] < 0 || cm.rank[x] > std::popcount(x))
      report.fail("R1: rank of " + join(cm.to_set(x)) + " out of range");
    for (Mask y = 0; y <= cm.full(); ++y) {
      if ((x & y) == x && cm.rank[x] > cm.rank[y])
        report.fail("R2: rank decreases from " + join(cm.to_set(x)) + " to " + join(cm.to_set(y)));
      if (cm.rank[x | y] + cm.rank[x & y] > cm.rank[x] + cm.rank[y])
        report.fail("R3: submodularity fails for " + join(cm.to_set(x)) + ", " +
                    join(cm.to_set(y)));
    }
  }
  return report;
}

CheckReport check_greedy_properties(const IndependenceOracle& m,
                                    const std::map<std::string, double>& weights) {
  if (m.ground_set.size() > 8) throw ContractError("check_greedy_properties bound is 8 elements");
  CheckReport report;
  CachedMatroid cm(m);
  const std::size_t n = cm.size();

  for (Mask restricted = 0; restricted <= cm.full(); ++restricted) {
    const Mask chosen = cm.greedy(restricted, weights);
    const auto chosen_profile = weight_profile(cm, chosen, weights);

    // Greedy output must Gale-dominate every independent subset.
    for (Mask s = restricted;; s = (s - 1) & restricted) {
      if (cm.indep[s]) {
        auto other = weight_profile(cm, s, weights);
        bool dominates = chosen_profile.size() >= other.size();
        for (std::size_t k = 0; dominates && k < other.size(); ++k)
          if (chosen_profile[k] < other[k]) dominates = false;
        if (!dominates)
          report.fail("greedy output " + join(cm.to_set(chosen)) + " does not Gale-dominate " +
                      join(cm.to_set(s)));
      }
      if (s == 0) break;
    }

    // Substitutes condition.
    for (std::size_t b = 0; b < n; ++b) {
      const Mask bit = Mask{1} << b;
      if (!(restricted & bit) || (chosen & bit)) continue;
      const Mask chosen2 = cm.greedy(restricted ^ bit, weights);
      if ((chosen & chosen2) != chosen)
        report.fail("substitutes: removing " + cm.ground[b] + " from " +
                    join(cm.to_set(restricted)) + " evicts a chosen element");
    }

    // Greedy output must be independent and rank maximal.
    if (!cm.indep[chosen])
      report.fail("greedy output " + join(cm.to_set(chosen)) + " is dependent");
    if (std::popcount(chosen) != cm.rank[restricted])
      report.fail("greedy output on " + join(cm.to_set(restricted)) + " is not rank maximal");

    // No justified envy in the matroid sense.
    for (std::size_t i = 0; i < n; ++i) {
      const Mask ibit = Mask{1} << i;
      if (!(chosen & ibit)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Mask jbit = Mask{1} << j;
        if (!(restricted & jbit) || (chosen & jbit)) continue;
        if (weights.at(cm.ground[j]) <= weights.at(cm.ground[i])) continue;
        if (cm.rank[(chosen & ~ibit) | jbit] >= cm.rank[chosen])
          report.fail("greedy NJE: " + cm.ground[j] + " justifiably envies " + cm.ground[i] +
                      " in " + join(cm.to_set(restricted)));
      }
    }
  }
  return report;
}

}  // namespace reserves::oracle
