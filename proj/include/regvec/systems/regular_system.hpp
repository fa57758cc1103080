#pragma once
#include <vector>

#include "regvec/lip/surface.hpp"

namespace regvec::systems {

// Region between two graphs for one direction: lower(π q) <= <q, λ> <= upper(π q).
struct Slab {
    Vec direction;
    lip::LipFn lower;
    lip::LipFn upper;
};

// Slabs 0..b, slab k bounded by H_k (below) and H_{k+1} (above), both given as
// graphs for λ_k. slabs[k-1].upper and slabs[k].lower describe the same set
// H_k in the two directions λ_{k-1} and λ_k. Slab 0 has lower = -inf, slab b
// has upper = +inf, and λ_0 = λ_1.
class RegularSystem {
public:
    RegularSystem(int ambient_dim, std::vector<Slab> slabs);
    // b = 0: one slab, the whole space, for the given direction.
    static RegularSystem empty(const Vec& direction);

    int ambient_dim() const { return n_; }
    int count() const { return static_cast<int>(slabs_.size()) - 1; }  // b
    const std::vector<Slab>& slabs() const { return slabs_; }
    const Slab& slab(int k) const { return slabs_.at(static_cast<size_t>(k)); }
    const Vec& direction(int k) const { return slab(k).direction; }
    const geom::Frame& frame(int k) const { return frames_.at(static_cast<size_t>(k)); }

    // H_k as a graph for λ_k (1 <= k <= b).
    lip::Hypersurface surface(int k) const;
    lip::Hypersurface lower_surface(int k) const;  // H_k for λ_k
    lip::Hypersurface upper_surface(int k) const;  // H_{k+1} for λ_k

private:
    int n_;
    std::vector<Slab> slabs_;
    std::vector<geom::Frame> frames_;
};

// Smallest k with q ∈ E(H_{k+1}, λ_k) under band semantics ("on" resolves down).
// The below-regions are nested, so this is a binary search.
int slab_membership(const RegularSystem& S, const Vec& q, double eps = kEpsEval);
// Reference linear scan; same answer on valid systems.
int slab_membership_linear(const RegularSystem& S, const Vec& q, double eps = kEpsEval);

// lower < <q,λ> < upper with margin eps on both sides.
bool in_open_slab(const Slab& s, const geom::Frame& F, const Vec& q, double eps = kEpsEval);

}  // namespace regvec::systems
