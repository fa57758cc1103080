#pragma once
#include <functional>
#include <vector>

#include "regvec/pl/simplex.hpp"
#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

// g(q) < 0 describes an open region; lip bounds |grad g|.
struct Constraint {
    std::function<double(const Vec&)> g;
    double lip;
};

// Constraints in R^n for the open slab of s.
std::vector<Constraint> slab_constraints(const Slab& s);
// Same slab pulled back along π_e: the slab lives in the coordinates of N_e.
std::vector<Constraint> cylinder_constraints(const Vec& e, const Slab& s);

struct RegionTestOptions {
    double tol = kEpsEval;
    int max_cells = 4096;
    double min_radius = 1e-9;
};

// Branch and bound over longest-edge bisection: does some point of σ satisfy
// every g < -tol? Undecided cells at the budget count as "no".
bool simplex_meets_region(const pl::Simplex& s, const std::vector<Constraint>& cs,
                          const RegionTestOptions& opts = {});

}  // namespace regvec::systems
