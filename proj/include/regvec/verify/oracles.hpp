#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "regvec/flatten/zigzag.hpp"
#include "regvec/geom/subspace.hpp"

namespace regvec::verify {

struct GridArgmax {
    Vec lambda;
    double margin;
    double pitch;   // margin_true - margin <= pitch
};

// Exhaustive min_i d(λ, P_i) over a latitude/longitude grid with
// `resolution` steps per angular dimension (n <= 4).
GridArgmax grid_sphere_argmax(int n, const std::vector<geom::Subspace>& subspaces, int resolution);

struct BilipschitzEstimate {
    double L_fwd = 0, L_inv = 0;
    Vec fwd_p, fwd_q;   // pair attaining L_fwd
    Vec inv_p, inv_q;   // domain pair attaining L_inv
    int pairs = 0;
    int skipped = 0;
};

// Half the pairs are near (log-uniform separation down to 1e-4 of the box
// size), half uniform in the box.
BilipschitzEstimate estimate_bilipschitz(const std::function<Vec(const Vec&)>& h, const Vec& lo, const Vec& hi,
                                         int n_pairs, std::uint64_t seed = 20240611);
BilipschitzEstimate estimate_bilipschitz(const flatten::ZigzagMap& h, const Vec& lo, const Vec& hi, int n_pairs,
                                         std::uint64_t seed = 20240611);

struct CoverViolation {
    int sample;
    int simplex;
    std::string what;
    double value;
};

struct CoverReport {
    int samples = 0;
    double max_residual = 0;    // distance in height to the nearest F_k
    double max_slope = 0;       // largest secant slope within one simplex on one floor
    double slope_bound = 0;     // L_eta
    std::vector<CoverViolation> violations;
    bool ok() const { return violations.empty(); }
};

struct CoverOptions {
    double residual_tol = 1e-8;
    double slope_tol = 1e-6;
    int max_branch_points = 1500;   // secant scan subsamples larger branches
};

CoverReport check_graph_cover(const flatten::ZigzagMap& h, const std::vector<flatten::ImageSample>& image,
                              const CoverOptions& opts = {});

// Grid points at the given pitch inside [lo, hi] passing `inside`, joined by
// 2n-adjacency; number of components.
int component_count(const std::function<bool(const Vec&)>& inside, const Vec& lo, const Vec& hi, double pitch);

}  // namespace regvec::verify
