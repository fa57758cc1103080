#pragma once
#include <vector>

#include "regvec/pl/simplex.hpp"

namespace regvec::pl {

// Direction subspaces of the maximal simplices, deduplicated.
std::vector<geom::Subspace> tangent_set(const PLSet& A);

double regularity_margin(const Vec& lambda, const PLSet& A);

// Greedy clustering; each group has pairwise direction angle <= alpha.
std::vector<PLSet> flat_partition(const PLSet& A, double alpha);
std::vector<std::vector<int>> flat_partition_indices(const PLSet& A, double alpha);

// Slope bound for graphs over N_λ of planes with d(λ, T) >= alpha.
double slope_bound(double alpha);

// σ seen as the graph over N_λ of an affine function on its shadow.
struct GraphPiece {
    int simplex = -1;               // index into the source PLSet
    std::vector<Vec> shadow;        // vertices in N_λ coordinates (n-1)
    Vec gradient;                   // in N_λ coordinates, within the shadow's span
    double offset = 0;              // height = gradient . s + offset
    double slope = 0;               // |gradient|
    double lip_cert = 0;            // slope_bound(alpha)

    double height(const Vec& s) const { return gradient.dot(s) + offset; }
};

std::vector<GraphPiece> graph_decompose(const PLSet& A, const Vec& lambda, double alpha);

}  // namespace regvec::pl
