#pragma once
#include <random>
#include <vector>

#include "regvec/geom/types.hpp"

namespace regvec::geom {

struct SphereCover {
    double radius = 0;       // t; balls of radius t/2 cover the sphere
    std::vector<Vec> points;
};

// Normalized lattice points of the subdivided cross-polytope boundary.
SphereCover sphere_cover(int n, double t);

// Sampled check of the covering property. Returns the number of misses.
int count_cover_misses(const SphereCover& cover, int n, int samples, std::uint64_t seed);

Vec random_unit(int n, std::mt19937_64& rng);

// Minimal chordal distance incl. antipodes, |a - b| vs |a + b|.
inline double projective_distance(const Vec& a, const Vec& b) {
    return std::min((a - b).norm(), (a + b).norm());
}

}  // namespace regvec::geom
