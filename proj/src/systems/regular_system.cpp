#include "regvec/systems/regular_system.hpp"

#include <string>

#include "regvec/errors.hpp"

namespace regvec::systems {

RegularSystem::RegularSystem(int ambient_dim, std::vector<Slab> slabs) : n_(ambient_dim), slabs_(std::move(slabs)) {
    require(!slabs_.empty(), "RegularSystem: no slabs");
    const int b = count();
    for (int k = 0; k <= b; ++k) {
        const Slab& s = slabs_[k];
        require(s.direction.size() == n_, "RegularSystem: direction dimension mismatch");
        require(s.lower.valid() && s.upper.valid(), "RegularSystem: slab " + std::to_string(k) + " is incomplete");
        require(s.lower.dim() == n_ - 1 && s.upper.dim() == n_ - 1, "RegularSystem: height domain mismatch");
        require(k == 0 ? s.lower.is_neg_inf() : !s.lower.is_sentinel(),
                "RegularSystem: slab " + std::to_string(k) + " has a bad lower bound");
        require(k == b ? s.upper.is_pos_inf() : !s.upper.is_sentinel(),
                "RegularSystem: slab " + std::to_string(k) + " has a bad upper bound");
        frames_.emplace_back(s.direction);
    }
    if (b >= 1) require(slabs_[0].direction == slabs_[1].direction, "RegularSystem: λ_0 must equal λ_1");
}

RegularSystem RegularSystem::empty(const Vec& direction) {
    const int n = static_cast<int>(direction.size());
    return RegularSystem(n, {Slab{direction, lip::neg_inf(n - 1), lip::pos_inf(n - 1)}});
}

lip::Hypersurface RegularSystem::surface(int k) const {
    require(k >= 1 && k <= count(), "RegularSystem::surface: index out of range");
    return lower_surface(k);
}

lip::Hypersurface RegularSystem::lower_surface(int k) const { return {slab(k).direction, slab(k).lower}; }
lip::Hypersurface RegularSystem::upper_surface(int k) const { return {slab(k).direction, slab(k).upper}; }

namespace {

bool at_or_below_upper(const RegularSystem& S, int k, const Vec& q, double eps) {
    const Slab& s = S.slab(k);
    if (s.upper.is_pos_inf()) return true;
    const geom::Frame& F = S.frame(k);
    return F.height(q) - s.upper(F.shadow(q)) <= eps;
}

}  // namespace

int slab_membership(const RegularSystem& S, const Vec& q, double eps) {
    require(q.size() == S.ambient_dim(), "slab_membership: dimension mismatch");
    int lo = 0, hi = S.count();  // predicate holds at hi
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (at_or_below_upper(S, mid, q, eps)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

int slab_membership_linear(const RegularSystem& S, const Vec& q, double eps) {
    for (int k = 0; k < S.count(); ++k)
        if (at_or_below_upper(S, k, q, eps)) return k;
    return S.count();
}

bool in_open_slab(const Slab& s, const geom::Frame& F, const Vec& q, double eps) {
    const Vec sh = F.shadow(q);
    const double h = F.height(q);
    if (!s.lower.is_neg_inf() && !(h > s.lower(sh) + eps)) return false;
    if (!s.upper.is_pos_inf() && !(h < s.upper(sh) - eps)) return false;
    return true;
}

}  // namespace regvec::systems
