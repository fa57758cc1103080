#pragma once
#include <string>
#include <vector>

#include "regvec/pl/simplex.hpp"
#include "regvec/systems/region_test.hpp"
#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

struct BuildOptions {
    double eta = 0.25;            // ±e and ±μ stay this far from the target direction
    double alpha_min = 0.005;     // floor on every margin the construction relies on
    double direct_margin = 0.25;  // target already regular with this margin: extend directly
    int max_slabs = 10000;
    RegionTestOptions region;
};

struct BuildStats {
    std::vector<std::string> log;
    int steps = 0;                // slabs handled by Steps 2-4
    double min_margin = kInf;     // smallest margin accepted along the way
};

// Regular system compatible with A, starting from target direction e_n.
RegularSystem build_system(const pl::PLSet& A, const BuildOptions& opts = {}, BuildStats* stats = nullptr);
RegularSystem build_system(const pl::PLSet& A, const Vec& target, const BuildOptions& opts = {},
                           BuildStats* stats = nullptr);

// Projection of σ along e into N_e coordinates, as simplices (dependent
// images are replaced by their convex hull).
std::vector<pl::Simplex> project_simplex(const pl::Simplex& s, const geom::Frame& F);

}  // namespace regvec::systems
