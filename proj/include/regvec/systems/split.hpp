#pragma once
#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

struct SplitOptions {
    Vec box_lo, box_hi;     // region of interest in R^n
    int cells_1d = 4096;    // grid cells along a 1-D shadow
    int cells_2d = 256;     // grid cells per side for 2-D shadows
    double gap_threshold = 10 * kEpsEval;
};

// Number of connected components of the open slab k (within the box).
int count_slab_components(const RegularSystem& S, int k, const SplitOptions& opts);

// Inserts ν-1 graphs so that each new slab's interior is one component.
RegularSystem split_components(const RegularSystem& S, int k, const SplitOptions& opts);

}  // namespace regvec::systems
