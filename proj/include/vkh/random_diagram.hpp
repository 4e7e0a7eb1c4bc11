#pragma once

#include <random>

#include "vkh/diagram.hpp"
#include "vkh/moves.hpp"

namespace vkh {

struct RandomParams {
    int classical = 4;
    int virtual_ = 0;
    int components = 1;
};

// Seeded random virtual link diagram with the requested crossing counts,
// grown by planarity-preserving local operations (kinks and face pierces)
// and validated on output. Throws when the budget is exhausted.
Diagram random_diagram(const RandomParams& p, uint64_t seed);

// A random applicable move instance of the given type, or nullopt if no
// location exists (triangle moves on triangle-free diagrams).
std::optional<MoveInstance> random_move(const Diagram& d, MoveType t,
                                        std::mt19937_64& rng);

}  // namespace vkh
