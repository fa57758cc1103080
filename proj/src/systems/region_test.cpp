#include "regvec/systems/region_test.hpp"

#include <cmath>
#include <queue>

namespace regvec::systems {

std::vector<Constraint> slab_constraints(const Slab& s) {
    std::vector<Constraint> out;
    const geom::Frame F(s.direction);
    if (!s.lower.is_neg_inf()) {
        lip::LipFn lo = s.lower;
        out.push_back({[F, lo](const Vec& q) { return lo(F.shadow(q)) - F.height(q); },
                       std::sqrt(1 + lo.lip() * lo.lip())});
    }
    if (!s.upper.is_pos_inf()) {
        lip::LipFn hi = s.upper;
        out.push_back({[F, hi](const Vec& q) { return F.height(q) - hi(F.shadow(q)); },
                       std::sqrt(1 + hi.lip() * hi.lip())});
    }
    return out;
}

std::vector<Constraint> cylinder_constraints(const Vec& e, const Slab& s) {
    std::vector<Constraint> out;
    const geom::Frame E(e);
    for (auto& c : slab_constraints(s)) {
        auto g = c.g;
        out.push_back({[E, g](const Vec& q) { return g(E.shadow(q)); }, c.lip});
    }
    return out;
}

bool simplex_meets_region(const pl::Simplex& s, const std::vector<Constraint>& cs, const RegionTestOptions& opts) {
    if (cs.empty()) return true;
    // Largest cell first. Depth first, or best first on the centroid values,
    // both get stuck refining along a boundary through a corner of the region.
    struct Cell {
        double score;
        std::vector<Vec> v;
        bool operator<(const Cell& o) const { return score > o.score; }
    };
    std::priority_queue<Cell> open;
    auto push = [&](std::vector<Vec> v) {
        Vec c = Vec::Zero(v[0].size());
        for (const auto& x : v) c += x;
        c /= static_cast<double>(v.size());
        double rho = 0;
        for (const auto& x : v) rho = std::max(rho, (x - c).norm());
        bool inside = true;
        for (const auto& k : cs) {
            const double g = k.g(c);
            if (g - k.lip * rho >= -opts.tol) return false;  // no point of the cell inside
            if (!(g < -opts.tol)) inside = false;
        }
        if (inside) return true;
        if (v.size() > 1 && rho >= opts.min_radius) open.push({-rho, std::move(v)});
        return false;
    };
    if (push(s.vertices())) return true;
    for (int cells = 1; !open.empty() && cells < opts.max_cells; ++cells) {
        std::vector<Vec> cell = open.top().v;
        open.pop();
        // bisect the longest edge
        size_t a = 0, b = 1;
        double best = -1;
        for (size_t i = 0; i < cell.size(); ++i)
            for (size_t j = i + 1; j < cell.size(); ++j) {
                const double d = (cell[i] - cell[j]).squaredNorm();
                if (d > best) { best = d; a = i; b = j; }
            }
        const Vec mid = 0.5 * (cell[a] + cell[b]);
        std::vector<Vec> c1 = cell, c2 = std::move(cell);
        c1[a] = mid;
        c2[b] = mid;
        if (push(std::move(c1)) || push(std::move(c2))) return true;
    }
    return false;
}

}  // namespace regvec::systems
