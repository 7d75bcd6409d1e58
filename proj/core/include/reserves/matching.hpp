#pragma once

#include <string>
#include <vector>

#include "reserves/types.hpp"

namespace reserves {

// One HR-protected slot: q^v_t slots per (category, trait) pair.
struct HRSlot {
  std::string trait;
  int index = 0;  // 0 <= index < q^v_t
};

// Two-sided category-v HR graph. Left vertices are individuals (descending
// merit), right vertices are HR slots (declared trait order, then index).
// Individual i is adjacent to every slot of every trait she holds.
struct HRGraph {
  std::string category;
  std::vector<Individual> left;
  std::vector<HRSlot> right;
  std::vector<std::vector<int>> edges;  // left index -> right indices, ascending

  int left_size() const { return static_cast<int>(left.size()); }
  int right_size() const { return static_cast<int>(right.size()); }
};

// A trait-matching: partial injective assignment of left to right vertices.
struct TraitMatching {
  // match_of_left[i] = right index or -1; match_of_right[j] = left index or -1.
  std::vector<int> match_of_left;
  std::vector<int> match_of_right;

  int cardinality() const;
  TraitAssignment to_assignment(const HRGraph& graph) const;
};

// Builds the category-v HR graph for `individuals` (all must be eligible for
// v; throws ContractError otherwise).
HRGraph build_hr_graph(const std::string& v,
                       const std::vector<Individual>& individuals,
                       const QuotaScheme& quotas);

// Maximum-cardinality trait-matching via repeated augmenting-path search.
// Deterministic: left vertices are processed in listed order, neighbors in
// listed order, so the witness fills lower-index slots first.
TraitMatching max_trait_matching(const HRGraph& graph);

// The HR-maximality function n^v: maximum number of category-v HR-protected
// slots fillable by `individuals`.
int hr_utilization(const std::string& v,
                   const std::vector<Individual>& individuals,
                   const QuotaScheme& quotas);

// True iff n^v(base + candidate) == n^v(base) + 1. Single augmenting-path
// search from the candidate against a maximum matching of `base`.
bool increases_hr_utilization(const std::string& v,
                              const std::vector<Individual>& base,
                              const Individual& candidate,
                              const QuotaScheme& quotas);

}  // namespace reserves
