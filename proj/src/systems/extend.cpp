#include "regvec/systems/extend.hpp"

#include <string>

#include "regvec/errors.hpp"
#include "regvec/pl/sampling.hpp"
#include "regvec/pl/tangent.hpp"

namespace regvec::systems {

std::vector<Slab> extend_slab(const Slab& s, const pl::PLSet& X, const ExtendOptions& opts, int k) {
    if (X.empty()) return {s};
    const geom::Frame F(s.direction);

    double alpha = kInf;
    for (size_t i = 0; i < X.size(); ++i) {
        const double m = geom::dist_to_subspace(s.direction, X.simplices()[i].direction());
        if (m < opts.alpha_min)
            throw ContractViolation("extend_with: λ_" + std::to_string(k) + " is not regular for simplex " +
                                    std::to_string(i) + " (margin " + std::to_string(m) + ")");
        alpha = std::min(alpha, m);
    }
    if (opts.require_inside) {
        for (size_t i = 0; i < X.size(); ++i)
            for (const auto& q : pl::sample_simplex(X.simplices()[i], 16)) {
                const Vec sh = F.shadow(q);
                const double h = F.height(q);
                const bool ok = (s.lower.is_neg_inf() || h >= s.lower(sh) - opts.eps_eval) &&
                                (s.upper.is_pos_inf() || h <= s.upper(sh) + opts.eps_eval);
                if (!ok)
                    throw ContractViolation("extend_with: simplex " + std::to_string(i) + " leaves slab " +
                                            std::to_string(k));
            }
    }

    std::vector<lip::LipFn> ext;
    for (const auto& p : pl::graph_decompose(X, s.direction, alpha)) {
        lip::Piece piece{p.shadow, p.gradient, p.offset};
        ext.push_back(lip::mcshane_extend({piece}, p.slope));
    }
    const auto sorted = lip::order_statistics(ext);

    std::vector<Slab> out;
    lip::LipFn below = s.lower;
    for (const auto& f : sorted) {
        const lip::LipFn theta = lip::clamp(s.lower, f, s.upper);
        out.push_back({s.direction, below, theta});
        below = theta;
    }
    out.push_back({s.direction, below, s.upper});
    return out;
}

RegularSystem extend_with(const RegularSystem& S, int k, const pl::PLSet& X, const ExtendOptions& opts) {
    require(k >= 0 && k <= S.count(), "extend_with: slab index out of range");
    require(X.ambient_dim() == S.ambient_dim(), "extend_with: dimension mismatch");
    if (X.empty()) return S;
    std::vector<Slab> out(S.slabs().begin(), S.slabs().begin() + k);
    for (auto& s : extend_slab(S.slab(k), X, opts, k)) out.push_back(std::move(s));
    out.insert(out.end(), S.slabs().begin() + k + 1, S.slabs().end());
    return RegularSystem(S.ambient_dim(), std::move(out));
}

}  // namespace regvec::systems
