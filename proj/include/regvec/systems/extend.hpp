#pragma once
#include "regvec/pl/simplex.hpp"
#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

struct ExtendOptions {
    double alpha_min = 0.005;
    // Precondition X ⊂ G_k checked on samples; the builder passes whole
    // simplices that merely meet the slab and turns this off.
    bool require_inside = true;
    double eps_eval = kEpsEval;
};

// The slab cut by the graphs of X, bottom to top (k only labels messages).
std::vector<Slab> extend_slab(const Slab& s, const pl::PLSet& X, const ExtendOptions& opts = {}, int k = 0);

// Insert graphs of X between H_k and H_{k+1}, all for λ_k.
RegularSystem extend_with(const RegularSystem& S, int k, const pl::PLSet& X, const ExtendOptions& opts = {});

}  // namespace regvec::systems
