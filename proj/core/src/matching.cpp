#include "reserves/matching.hpp"

#include <algorithm>

#include "reserves/errors.hpp"

namespace reserves {

namespace {

// One augmenting-path search from left vertex u (Kuhn's algorithm step).
// Neighbor scan order follows the graph's canonical edge order.
bool try_augment(const HRGraph& graph, int u, std::vector<int>& match_left,
                 std::vector<int>& match_right, std::vector<bool>& visited) {
  for (int j : graph.edges[u]) {
    if (visited[j]) continue;
    visited[j] = true;
    if (match_right[j] == -1 ||
        try_augment(graph, match_right[j], match_left, match_right, visited)) {
      match_left[u] = j;
      match_right[j] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

int TraitMatching::cardinality() const {
  int n = 0;
  for (int j : match_of_left)
    if (j != -1) ++n;
  return n;
}

TraitAssignment TraitMatching::to_assignment(const HRGraph& graph) const {
  TraitAssignment out;
  for (std::size_t i = 0; i < match_of_left.size(); ++i) {
    int j = match_of_left[i];
    if (j != -1) out[graph.left[i].id] = {graph.right[j].trait, graph.right[j].index};
  }
  return out;
}

HRGraph build_hr_graph(const std::string& v, const std::vector<Individual>& individuals,
                       const QuotaScheme& quotas) {
  for (const auto& i : individuals)
    if (v != kOpenCategory && (!i.category || *i.category != v))
      throw ContractError(i.id + " is not eligible for category " + v);

  HRGraph graph;
  graph.category = v;
  graph.left = individuals;
  std::sort(graph.left.begin(), graph.left.end(),
            [](const Individual& a, const Individual& b) { return a.merit > b.merit; });

  const auto& hr = quotas.hr_quotas(v);
  for (const auto& t : quotas.trait_universe) {
    auto it = hr.find(t);
    if (it == hr.end()) continue;
    for (int k = 0; k < it->second; ++k) graph.right.push_back({t, k});
  }

  graph.edges.resize(graph.left.size());
  for (std::size_t i = 0; i < graph.left.size(); ++i)
    for (std::size_t j = 0; j < graph.right.size(); ++j)
      if (graph.left[i].has_trait(graph.right[j].trait))
        graph.edges[i].push_back(static_cast<int>(j));
  return graph;
}

TraitMatching max_trait_matching(const HRGraph& graph) {
  TraitMatching m;
  m.match_of_left.assign(graph.left.size(), -1);
  m.match_of_right.assign(graph.right.size(), -1);
  for (int u = 0; u < graph.left_size(); ++u) {
    std::vector<bool> visited(graph.right.size(), false);
    try_augment(graph, u, m.match_of_left, m.match_of_right, visited);
  }
  return m;
}

int hr_utilization(const std::string& v, const std::vector<Individual>& individuals,
                   const QuotaScheme& quotas) {
  return max_trait_matching(build_hr_graph(v, individuals, quotas)).cardinality();
}

bool increases_hr_utilization(const std::string& v, const std::vector<Individual>& base,
                              const Individual& candidate, const QuotaScheme& quotas) {
  for (const auto& i : base)
    if (i.id == candidate.id)
      throw ContractError("candidate " + candidate.id + " already in the base set");

  // Graph over base + candidate; the candidate is appended last so a maximum
  // matching of the base alone occupies the first |base| left vertices.
  std::vector<Individual> all = base;
  all.push_back(candidate);
  HRGraph graph = build_hr_graph(v, all, quotas);

  int cand_index = -1;
  for (std::size_t i = 0; i < graph.left.size(); ++i)
    if (graph.left[i].id == candidate.id) cand_index = static_cast<int>(i);

  TraitMatching m;
  m.match_of_left.assign(graph.left.size(), -1);
  m.match_of_right.assign(graph.right.size(), -1);
  for (int u = 0; u < graph.left_size(); ++u) {
    if (u == cand_index) continue;
    std::vector<bool> visited(graph.right.size(), false);
    try_augment(graph, u, m.match_of_left, m.match_of_right, visited);
  }
  std::vector<bool> visited(graph.right.size(), false);
  return try_augment(graph, cand_index, m.match_of_left, m.match_of_right, visited);
}

}  // namespace reserves
