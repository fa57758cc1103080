#pragma once
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "regvec/geom/sphere.hpp"
#include "regvec/geom/subspace.hpp"

namespace testing_util {

using regvec::Vec;

inline Vec v2(double a, double b) { Vec v(2); v << a, b; return v; }
inline Vec v3(double a, double b, double c) { Vec v(3); v << a, b, c; return v; }
inline Vec v1(double a) { Vec v(1); v << a; return v; }

inline Vec random_vec(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = u(rng);
    return v;
}

inline regvec::geom::Subspace random_subspace(int n, int k, std::mt19937_64& rng) {
    std::vector<Vec> vs;
    for (int i = 0; i < k; ++i) vs.push_back(regvec::geom::random_unit(n, rng));
    return regvec::geom::Subspace::span(vs);
}

}  // namespace testing_util
