#pragma once

#include <random>
#include <string>
#include <vector>

#include "hyperseq/kripke.hpp"

namespace hyperseq {

// Uniform-ish random formula of connective depth at most max_depth.
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms, int max_depth);

// 1..max_components components with 0..max_side formulas per side.
Hypersequent random_hypersequent(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                 int max_components, int max_side, int max_depth);

// 1..max_worlds worlds, each pair related with probability density.
KripkeModel random_kripke_model(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                                int max_worlds, double density = 0.4);

}  // namespace hyperseq
