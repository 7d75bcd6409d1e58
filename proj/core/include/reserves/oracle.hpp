#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "reserves/matching.hpp"
#include "reserves/types.hpp"

// Independent brute-force references for the matching kernel, the rules, and
// the characterization theorems. Nothing here shares algorithm code with
// matching/rules; only the core types.
namespace reserves::oracle {

// Exhaustive search over injective partial maps. Bounds: 12 x 12
// (ContractError above).
int brute_force_matching(const HRGraph& graph);

// n^v recomputed from scratch by exhaustive assignment of individuals to
// traits they hold, without the matching module.
int brute_force_utilization(const std::vector<Individual>& individuals,
                            const std::map<std::string, int>& hr_quotas);

// Every capacity/eligibility-respecting disjoint family {C^v} over the pool
// that passes the four axiom definitions by direct recomputation.
// Pool bound: 10 individuals.
std::vector<Allocation> enumerate_axiomatic_allocations(const Instance& inst);

// |X| >= |Y| and the k-th highest merit member of X is the same individual
// as, or strictly outscores, the k-th highest of Y, for all k <= |Y|.
bool gale_dominates(const std::vector<Individual>& x, const std::vector<Individual>& y);

// Every S within capacity such that no unselected individual raises the HR
// utilization of S: the comparison class of the Gale-dominance property.
// Pool bound: 12.
std::vector<std::vector<Individual>> enumerate_maximally_accommodating(
    const std::vector<Individual>& pool, const std::map<std::string, int>& hr_quotas,
    int capacity);

// Abstract independence system over a ground set of ids.
struct IndependenceOracle {
  std::vector<std::string> ground_set;
  std::function<bool(const std::set<std::string>&)> independent;
};

// Transversal matroid of the category-v HR graph: independent iff the set
// admits a perfect trait-matching (checked by brute force).
IndependenceOracle transversal_matroid(const std::vector<Individual>& individuals,
                                       const std::map<std::string, int>& hr_quotas);

// Greedy base of the restriction to `subset`; weights must be distinct.
std::set<std::string> greedy_choice(const IndependenceOracle& m,
                                    const std::map<std::string, double>& weights,
                                    const std::set<std::string>& subset);

struct CheckReport {
  bool pass = true;
  std::vector<std::string> failures;
  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

// Exhaustive M1-M3 on the independence predicate, B2' on bases, R1-R3 on the
// rank function. Ground set bound: 6.
CheckReport check_matroid_axioms(const IndependenceOracle& m);

// For every subset E' of the ground set: greedy Gale-dominates every
// independent subset of E'; greedy satisfies the substitutes condition; the
// greedy output is independent and rank maximal and has no justified envy.
// Ground set bound: 8.
CheckReport check_greedy_properties(const IndependenceOracle& m,
                                    const std::map<std::string, double>& weights);

}  // namespace reserves::oracle
