#pragma once
#include <optional>
#include <vector>

#include "regvec/geom/subspace.hpp"

namespace regvec::geom {

struct DirectionResult {
    Vec lambda;
    double margin;
};

// Directions c with |λ - c| < radius or |λ + c| < radius are not admissible.
struct Exclusion {
    Vec center;
    double radius;
};

struct MaxMinOptions {
    double cover_t = 0.2;
    int nm_iterations = 200;
    int refine_candidates = 6;
    std::vector<Exclusion> exclusions;
};

// Approximate argmax over the unit sphere of min_i d(λ, P_i).
DirectionResult max_min_direction(int n, const std::vector<Subspace>& subspaces,
                                  const MaxMinOptions& opts = {});

struct FiberOptions {
    int scan_points = 1000;
    int golden_iterations = 80;
    double tol = 1e-12;
    std::optional<Vec> target;   // fiber label y in N_μ; defaults to π̃_μ(l)
    // Candidates tried in order; the first with margin >= accept_ratio * best
    // (and on the arc) wins over the optimum.
    std::vector<Vec> preferred;
    double accept_ratio = 0.5;
};

// Search along π̃_μ^{-1}(y) ∩ B(l, r).
DirectionResult fiber_direction_search(const Vec& mu, const Vec& l, double r,
                                       const std::vector<Subspace>& subspaces,
                                       const FiberOptions& opts = {});

// Unit tangent at x of the half great circle through ±μ and x.
Vec fiber_tangent(const Vec& mu, const Vec& x);

}  // namespace regvec::geom
