#include "regvec/systems/builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "regvec/errors.hpp"
#include "regvec/geom/direction_search.hpp"
#include "regvec/pl/tangent.hpp"
#include "regvec/systems/extend.hpp"
#include "regvec/systems/lambda_region.hpp"
#include "regvec/systems/split.hpp"

namespace regvec::systems {

using geom::Frame;
using geom::Subspace;
using lip::LipFn;
using pl::PLSet;
using pl::Simplex;

namespace {

std::vector<int> hull_2d(const std::vector<Eigen::Vector2d>& p) {
    std::vector<int> idx(p.size());
    for (size_t i = 0; i < p.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return p[a].x() < p[b].x() || (p[a].x() == p[b].x() && p[a].y() < p[b].y());
    });
    auto cross = [&](int o, int a, int b) {
        return (p[a] - p[o]).x() * (p[b] - p[o]).y() - (p[a] - p[o]).y() * (p[b] - p[o]).x();
    };
    std::vector<int> h(2 * idx.size());
    size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    for (size_t j = idx.size() - 1, t = k + 1; j-- > 0;) {
        const int i = idx[j];
        while (k >= t && cross(h[k - 2], h[k - 1], i) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    const auto& v = s.vertices();
    for (size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<Vec> f;
        for (size_t i = 0; i < v.size(); ++i)
            if (i != drop) f.push_back(v[i]);
        out.emplace_back(std::move(f));
    }
    return out;
}

// Top-dimensional simplices contribute their facets, the rest themselves.
PLSet project_all(const PLSet& A, const Frame& F) {
    const int n = A.ambient_dim();
    PLSet out(n - 1);
    for (const auto& s : A.simplices()) {
        const auto parts = s.dim() == n - 1 ? facets(s) : std::vector<Simplex>{s};
        for (const auto& f : parts)
            for (auto& q : project_simplex(f, F)) out.add(std::move(q));
    }
    return out.subset(out.maximal_indices());
}

PLSet meeting(const PLSet& A, const std::vector<Constraint>& cs, const RegionTestOptions& ro) {
    std::vector<int> idx;
    for (size_t i = 0; i < A.size(); ++i)
        if (simplex_meets_region(A.simplices()[i], cs, ro)) idx.push_back(static_cast<int>(i));
    return A.subset(idx);
}

std::vector<Constraint> join(std::vector<Constraint> a, const std::vector<Constraint>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Point of the fiber over ȳ closest to t, kept away from ±e.
Vec lift_direction(const Vec& ybar, const Vec& e, const Vec& t) {
    constexpr double kPhiMax = 1.2;
    const double phi = std::clamp(std::atan2(t.dot(e), t.dot(ybar)), -kPhiMax, kPhiMax);
    return (std::cos(phi) * ybar + std::sin(phi) * e).normalized();
}

std::string fmt(const Vec& v) {
    std::ostringstream os;
    os.precision(4);
    os << "(";
    for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
    os << ")";
    return os.str();
}

class Builder {
public:
    Builder(const BuildOptions& o, BuildStats* st) : o_(o), st_(st) {}

    // Every direction of the result lies in B(target, rho).
    RegularSystem build(const PLSet& A, const Vec& target, double eta, double rho, int depth);

private:
    void note(int depth, const std::string& s) {
        if (st_) st_->log.push_back(std::string(2 * static_cast<size_t>(depth), ' ') + s);
    }
    void accept_margin(double m, const std::string& what) {
        if (!(m >= o_.alpha_min))
            throw NumericFailure("builder: " + what + " margin " + std::to_string(m) + " below alpha_min");
        if (st_) st_->min_margin = std::min(st_->min_margin, m);
    }
    RegularSystem base_1d(const PLSet& A, const Vec& target);
    RegularSystem split_all(RegularSystem S, const PLSet& A);
    std::vector<Slab> lift(const RegularSystem& low, const Vec& e, const Vec& target);
    void check_budget(size_t count) const {
        if (count > static_cast<size_t>(o_.max_slabs))
            throw NumericFailure("builder: more than " + std::to_string(o_.max_slabs) + " slabs");
    }

    const BuildOptions& o_;
    BuildStats* st_;
};

RegularSystem Builder::base_1d(const PLSet& A, const Vec& target) {
    const double s = target(0) > 0 ? 1.0 : -1.0;
    std::vector<double> h;
    for (const auto& x : A.simplices()) h.push_back(s * x.vertices().front()(0));
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end(), [](double a, double b) { return b - a <= kEpsGeom; }), h.end());
    Vec d(1);
    d(0) = s;
    std::vector<Slab> slabs;
    LipFn below = lip::neg_inf(0);
    for (double c : h) {
        const LipFn f = lip::constant(0, c);
        slabs.push_back({d, below, f});
        below = f;
    }
    slabs.push_back({d, below, lip::pos_inf(0)});
    return RegularSystem(1, std::move(slabs));
}

RegularSystem Builder::split_all(RegularSystem S, const PLSet& A) {
    if (S.ambient_dim() < 2 || A.empty()) return S;
    auto [lo, hi] = A.bounding_box();
    const double pad = 0.5 * std::max(1.0, (hi - lo).maxCoeff());
    SplitOptions so;
    so.box_lo = lo.array() - pad;
    so.box_hi = hi.array() + pad;
    for (int k = S.count(); k >= 0; --k) S = split_components(S, k, so);
    return S;
}

// Cylinders over the slabs of `low`, each regraphed for the lift of its direction.
std::vector<Slab> Builder::lift(const RegularSystem& low, const Vec& e, const Vec& target) {
    const int n = static_cast<int>(e.size());
    const Frame Fe(e);
    struct Entry {
        const lip::Node* node;
        Vec lambda;
        LipFn fn;
    };
    std::vector<Entry> cache;
    auto lifted = [&](const LipFn& f, const Vec& dbar, const Vec& lam) -> LipFn {
        if (f.is_neg_inf()) return lip::neg_inf(n - 1);
        if (f.is_pos_inf()) return lip::pos_inf(n - 1);
        for (const auto& c : cache)
            if (c.node == f.node().get() && c.lambda == lam) return c.fn;
        const auto level = lip::cylinder_level(e, lip::Hypersurface(dbar, f).level());
        LipFn g = lip::regraph(level, lam);
        cache.push_back({f.node().get(), lam, g});
        return g;
    };
    std::vector<Slab> out;
    for (int k = 0; k <= low.count(); ++k) {
        const Slab& s = low.slab(k);
        const Vec lam = lift_direction(Fe.embed(s.direction), e, target);
        out.push_back({lam, lifted(s.lower, s.direction, lam), lifted(s.upper, s.direction, lam)});
    }
    return out;
}

RegularSystem Builder::build(const PLSet& A, const Vec& target, double eta, double rho, int depth) {
    const int n = A.ambient_dim();
    if (A.empty()) return RegularSystem::empty(target);
    if (n == 1) return base_1d(A, target);

    const double m0 = pl::regularity_margin(target, A);
    ExtendOptions xo;
    xo.alpha_min = o_.alpha_min;
    xo.require_inside = false;
    if (m0 >= o_.direct_margin) {
        note(depth, "n=" + std::to_string(n) + ": target " + fmt(target) + " regular (margin " +
                        std::to_string(m0) + "), direct");
        accept_margin(m0, "target");
        return extend_with(RegularSystem::empty(target), 0, A, xo);
    }

    // Step 1: cylinders over a system for the boundary shadows along e.
    geom::MaxMinOptions mo;
    mo.exclusions = {{target, eta}};
    const auto er = geom::max_min_direction(n, pl::tangent_set(A), mo);
    const Vec& e = er.lambda;
    note(depth, "n=" + std::to_string(n) + ": e = " + fmt(e) + " (margin " + std::to_string(er.margin) + ")");
    const Frame Fe(e);
    const PLSet Abar = project_all(A, Fe);
    const Vec tbar = Fe.shadow(geom::tilde_pi(e, target)).normalized();
    const RegularSystem low = split_all(build(Abar, tbar, eta / 2, rho / 2, depth + 1), Abar);
    std::vector<Slab> H = lift(low, e, target);
    check_budget(H.size());

    // Steps 2-4 per slab, top down so lower indices stay put.
    std::vector<Vec> recent;
    for (int p = static_cast<int>(H.size()) - 1; p >= 0; --p) {
        const auto cs = cylinder_constraints(e, low.slab(p));
        const PLSet Ap = meeting(A, cs, o_.region);
        if (Ap.empty()) continue;
        if (st_) ++st_->steps;

        const auto ts = pl::tangent_set(Ap);
        const auto mr = geom::max_min_direction(n, ts, mo);
        accept_margin(mr.margin, "μ");
        const Vec& mu = mr.lambda;
        const Vec lam_p = H[p].direction;

        const double lm = slab_margin(H[p], lam_p);
        accept_margin(lm, "Λ");
        const double r = std::min({1.0, lm / 2, rho - (lam_p - target).norm()});
        accept_margin(r, "ball radius");

        // Directions of low2 within r/2 of π̃_μ(λ_p) keep each fiber inside reach.
        const Frame Fm(mu);
        const PLSet Ahat = project_all(Ap, Fm);
        const Vec that = Fm.shadow(geom::tilde_pi(mu, lam_p)).normalized();
        const RegularSystem low2 = split_all(build(Ahat, that, eta / 2, r / 2, depth + 1), Ahat);
        const int bh = low2.count();

        // Simplices of Ap in each sub-slab, and one direction per sub-slab
        // (sub-slabs 0 and 1 share theirs).
        std::vector<PLSet> parts;
        for (int k = 0; k <= bh; ++k)
            parts.push_back(meeting(Ap, join(cs, cylinder_constraints(mu, low2.slab(k))), o_.region));
        std::vector<Vec> hat(static_cast<size_t>(bh) + 1);
        for (int k = std::min(1, bh); k <= bh; ++k) {
            std::vector<Subspace> subs = pl::tangent_set(parts[k]);
            if (k == 1)
                for (const auto& t : pl::tangent_set(parts[0])) subs.push_back(t);
            subs.push_back(Subspace::span({mu}));
            geom::FiberOptions fo;
            fo.target = Fm.embed(low2.direction(k));
            fo.preferred = {lam_p};
            if (k > 1) fo.preferred.push_back(hat[k - 1]);
            for (auto it = recent.rbegin(); it != recent.rend(); ++it) fo.preferred.push_back(*it);
            const auto fr = geom::fiber_direction_search(mu, lam_p, r, subs, fo);
            accept_margin(fr.margin, "λ̂");
            hat[k] = fr.lambda;
            if (std::find(recent.begin(), recent.end(), fr.lambda) == recent.end()) recent.push_back(fr.lambda);
        }
        if (bh >= 1) hat[0] = hat[1];
        note(depth + 1, "slab " + std::to_string(p) + ": μ = " + fmt(mu) + ", " + std::to_string(bh + 1) +
                            " sub-slabs, r = " + std::to_string(r));

        // Step 3: H_p, the shadow cylinders of low2 and H_{p+1}, all for λ̂_k, clamped.
        const lip::LevelPtr lo_level = H[p].lower.is_sentinel() ? nullptr
                                                                : lip::Hypersurface(lam_p, H[p].lower).level();
        const lip::LevelPtr hi_level = H[p].upper.is_sentinel() ? nullptr
                                                                : lip::Hypersurface(lam_p, H[p].upper).level();
        auto zeta = [&](const lip::LevelPtr& lv, const LipFn& f, const Vec& lam) {
            return lv ? lip::regraph(lv, lam) : f;
        };
        auto cyl = [&](const Vec& dir, const LipFn& f, const Vec& lam) {
            return lip::regraph(lip::cylinder_level(mu, lip::Hypersurface(dir, f).level()), lam);
        };
        std::vector<Slab> block;
        for (int k = 0; k <= bh; ++k) {
            const Vec& lam = hat[k];
            const LipFn z = zeta(lo_level, H[p].lower, lam);
            const LipFn zp = zeta(hi_level, H[p].upper, lam);
            const Slab& s2 = low2.slab(k);
            const LipFn lower = k == 0 ? z : lip::clamp(z, cyl(s2.direction, s2.lower, lam), zp);
            const LipFn upper = k == bh ? zp : lip::clamp(z, cyl(s2.direction, s2.upper, lam), zp);
            block.push_back({lam, lower, upper});
        }
        // Reuse one function per shared boundary where the directions agree.
        for (size_t k = 1; k < block.size(); ++k)
            if (block[k].direction == block[k - 1].direction) block[k].lower = block[k - 1].upper;

        // Step 4: the pieces of A inside each new slab.
        std::vector<Slab> cut;
        for (int k = 0; k <= bh; ++k)
            for (auto& s : extend_slab(block[k], parts[k], xo, p)) cut.push_back(std::move(s));
        H.erase(H.begin() + p);
        H.insert(H.begin() + p, cut.begin(), cut.end());
        check_budget(H.size());
    }

    // Slab 0 untouched while slab 1 moved: describe it through H_1 for λ_1.
    if (H.size() >= 2 && H[0].direction != H[1].direction) H[0] = {H[1].direction, H[0].lower, H[1].lower};
    return RegularSystem(n, std::move(H));
}

}  // namespace

std::vector<Simplex> project_simplex(const Simplex& s, const Frame& F) {
    std::vector<Vec> p;
    for (const auto& v : s.vertices()) p.push_back(F.shadow(v));
    const int m = static_cast<int>(p.front().size());
    const int d = static_cast<int>(p.size()) - 1;
    if (d == 0) return {Simplex(p)};
    Eigen::MatrixXd D(m, d);
    double scale = 1.0;
    for (int i = 0; i < d; ++i) {
        D.col(i) = p[i + 1] - p[0];
        scale = std::max(scale, D.col(i).norm());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-9 * scale) ++rank;
    if (rank == d) return {Simplex(p)};
    if (rank == 0) return {Simplex({p[0]})};
    const Eigen::MatrixXd U = svd.matrixU().leftCols(rank);
    if (rank == 1) {
        int lo = 0, hi = 0;
        double vlo = 0, vhi = 0;
        for (int i = 1; i <= d; ++i) {
            const double t = U.col(0).dot(p[i] - p[0]);
            if (t < vlo) vlo = t, lo = i;
            if (t > vhi) vhi = t, hi = i;
        }
        return {Simplex({p[lo], p[hi]})};
    }
    require(rank == 2, "project_simplex: simplices of dimension > 3 are not supported");
    std::vector<Eigen::Vector2d> c;
    for (const auto& q : p) c.push_back(U.transpose() * (q - p[0]));
    const auto h = hull_2d(c);
    std::vector<Simplex> out;
    for (size_t i = 1; i + 1 < h.size(); ++i) out.emplace_back(std::vector<Vec>{p[h[0]], p[h[i]], p[h[i + 1]]});
    return out;
}

RegularSystem build_system(const PLSet& A, const Vec& target, const BuildOptions& opts, BuildStats* stats) {
    require(target.size() == A.ambient_dim(), "build_system: target dimension mismatch");
    require(std::abs(target.norm() - 1) < kEpsGeom * 10, "build_system: target must be a unit vector");
    Builder b(opts, stats);
    return b.build(A, target, opts.eta, 1.0, 0);
}

RegularSystem build_system(const PLSet& A, const BuildOptions& opts, BuildStats* stats) {
    Vec en = Vec::Zero(A.ambient_dim());
    en(A.ambient_dim() - 1) = 1;
    return build_system(A, en, opts, stats);
}

}  // namespace regvec::systems
