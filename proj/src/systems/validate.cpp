#include "regvec/systems/validate.hpp"

#include <cmath>
#include <random>

#include "regvec/geom/sphere.hpp"
#include "regvec/pl/sampling.hpp"
#include "regvec/util/parallel.hpp"

namespace regvec::systems {

std::pair<Vec, Vec> sampling_box(int n, const pl::PLSet* A) {
    if (!A || A->empty()) return {Vec::Constant(n, -2.0), Vec::Constant(n, 2.0)};
    auto [lo, hi] = A->bounding_box();
    const Vec pad = 0.5 * (hi - lo) + Vec::Constant(n, 0.5);
    return {lo - pad, hi + pad};
}

namespace {

Vec uniform_in(const Vec& lo, const Vec& hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    Vec q(lo.size());
    for (int i = 0; i < q.size(); ++i) q(i) = lo(i) + u(rng) * (hi(i) - lo(i));
    return q;
}

lip::Side side(const geom::Frame& F, const lip::LipFn& f, const Vec& q, double eps) {
    const double v = F.height(q) - f(F.shadow(q));
    if (v < -eps) return lip::Side::Below;
    if (v > eps) return lip::Side::Above;
    return lip::Side::On;
}

}  // namespace

ValidationReport validate(const RegularSystem& S, const pl::PLSet* A, const ValidationOptions& opts) {
    ValidationReport rep;
    const int n = S.ambient_dim();
    const int b = S.count();
    auto [lo, hi] = sampling_box(n, A);
    const double diam = (hi - lo).norm();
    const int per = std::max(opts.min_per_item, opts.samples / std::max(1, b));

    // shadows of A's sample points help catch violations where it matters
    std::vector<Vec> a_points;
    if (A)
        for (const auto& s : A->simplices())
            for (const auto& p : pl::sample_simplex(s, 4)) a_points.push_back(p);

    // (i) monotonicity on interior slabs
    rep.min_gap.assign(b + 1, kInf);
    rep.monotonicity.assign(b + 1, 0);
    util::parallel_for(std::max(0, b - 1), [&](int i) {
        const int k = i + 1;
        const Slab& s = S.slab(k);
        const geom::Frame& F = S.frame(k);
        std::mt19937_64 rng(opts.seed + 7919ull * k);
        auto check = [&](const Vec& q) {
            const Vec sh = F.shadow(q);
            const double g = s.upper(sh) - s.lower(sh);
            rep.min_gap[k] = std::min(rep.min_gap[k], g);
            if (g < -2 * opts.eps_eval) ++rep.monotonicity[k];
        };
        for (int j = 0; j < per; ++j) check(uniform_in(lo, hi, rng));
        for (const auto& p : a_points) check(p);
    });

    // (ii) below-region agreement of H_k seen from λ_{k-1} and λ_k
    rep.agreement.assign(b + 1, 0);
    util::parallel_for(b, [&](int i) {
        const int k = i + 1;
        const Slab& below_slab = S.slab(k - 1);
        const Slab& above_slab = S.slab(k);
        if (below_slab.direction == above_slab.direction && below_slab.upper.node() == above_slab.lower.node()) return;
        const geom::Frame& Fa = S.frame(k - 1);
        const geom::Frame& Fb = S.frame(k);
        std::mt19937_64 rng(opts.seed + 104729ull * k);
        std::uniform_real_distribution<double> u(0, 1);
        auto check = [&](const Vec& q) {
            const lip::Side x = side(Fa, below_slab.upper, q, opts.eps_eval);
            const lip::Side y = side(Fb, above_slab.lower, q, opts.eps_eval);
            if (x != lip::Side::On && y != lip::Side::On && x != y) ++rep.agreement[k];
        };
        for (int j = 0; j < per; ++j) {
            const Vec q = uniform_in(lo, hi, rng);
            check(q);
            // near the surface, at log-uniform distances
            const Vec sh = Fb.shadow(q);
            const Vec on = Fb.embed(sh, above_slab.lower(sh));
            const double delta = diam * std::pow(10.0, -7.0 + 6.0 * u(rng));
            check(on + delta * geom::random_unit(n, rng));
        }
        for (const auto& p : a_points) check(p);
    });

    // compatibility: A ⊂ ∪ H_k
    if (A) {
        const int m = static_cast<int>(A->size());
        rep.compatibility.assign(m, 0);
        rep.compatibility_samples.assign(m, 0);
        const int per_simplex = std::max(8, opts.samples / std::max(1, m));
        util::parallel_for(m, [&](int i) {
            for (const auto& q : pl::sample_simplex(A->simplices()[i], per_simplex, 17 * i)) {
                ++rep.compatibility_samples[i];
                const int k = slab_membership(S, q, opts.eps_mem);
                const Slab& s = S.slab(k);
                const geom::Frame& F = S.frame(k);
                const Vec sh = F.shadow(q);
                const double h = F.height(q);
                bool on = false;
                if (!s.upper.is_pos_inf() && std::abs(h - s.upper(sh)) <= opts.eps_mem) on = true;
                if (!on && !s.lower.is_neg_inf() && std::abs(h - s.lower(sh)) <= opts.eps_mem) on = true;
                if (!on) ++rep.compatibility[i];
            }
        });
        for (int i = 0; i < m; ++i) {
            rep.compatibility_total += rep.compatibility[i];
            rep.samples_used += rep.compatibility_samples[i];
        }
    }
    for (int k = 0; k <= b; ++k) {
        rep.monotonicity_total += rep.monotonicity[k];
        rep.agreement_total += rep.agreement[k];
    }
    rep.samples_used += per * std::max(0, b - 1) + 2 * per * b;
    return rep;
}

}  // namespace regvec::systems
