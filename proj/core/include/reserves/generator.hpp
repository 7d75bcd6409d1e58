#pragma once

#include <random>

#include "reserves/types.hpp"

namespace reserves {

// Knobs for random desk-scale instances used by the oracle checks and the
// property suites.
struct GeneratorParams {
  int max_individuals = 7;
  int max_categories = 2;
  int max_traits = 2;
  bool allow_overlapping = true;  // false caps every individual at one trait
  int max_category_capacity = 2;
  int max_open_capacity = 3;
};

// Draws a validated random instance. Merits are distinct by construction.
Instance random_instance(std::mt19937& rng, const GeneratorParams& params = {});

}  // namespace reserves
