#pragma once
#include <vector>

#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

constexpr double kAlphaLambda = 0.01;

struct SphereMesh {
    std::vector<Vec> points;
    std::vector<std::vector<int>> adjacency;
};

// 512-gon on S^1, icosphere with at least `resolution` vertices on S^2.
SphereMesh sphere_mesh(int n, int resolution);

struct LambdaRegion {
    SphereMesh mesh;
    std::vector<int> component;   // mesh indices of the region
    double center_margin = 0;     // certified margin at λ_k
};

// Certified margin of λ for H_k ∪ H_{k+1} (the slab's two graphs), signed.
double slab_margin(const Slab& s, const Vec& lambda);

LambdaRegion lambda_region(const RegularSystem& S, int k, int mesh_res = 0, double threshold = kAlphaLambda);

}  // namespace regvec::systems
