#include "regvec/geom/direction_search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "regvec/errors.hpp"
#include "regvec/geom/frame.hpp"
#include "regvec/geom/kernels.hpp"
#include "regvec/geom/sphere.hpp"

namespace regvec::geom {

namespace {

const SphereCover& cached_cover(int n, double t) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, SphereCover> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, t);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, sphere_cover(n, t)).first;
    return it->second;
}

bool excluded(const Vec& lambda, const std::vector<Exclusion>& ex) {
    for (const auto& e : ex)
        if ((lambda - e.center).norm() < e.radius || (lambda + e.center).norm() < e.radius) return true;
    return false;
}

double score(const Vec& lambda, const std::vector<Subspace>& subspaces, const std::vector<Exclusion>& ex) {
    if (excluded(lambda, ex)) return -kInf;
    return dist_to_set(lambda, subspaces);
}

// Plain Nelder-Mead, minimizing f over R^m.
template <class F>
std::pair<Eigen::VectorXd, double> nelder_mead(F f, const Eigen::VectorXd& x0, double step, int iters) {
    const int m = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> x(m + 1, x0);
    std::vector<double> fx(m + 1);
    for (int i = 0; i < m; ++i) x[i + 1](i) += step;
    for (int i = 0; i <= m; ++i) fx[i] = f(x[i]);
    std::vector<int> order(m + 1);
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i <= m; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        const int worst = order[m];
        const int second = order[m - 1];
        const int best = order[0];
        Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
        for (int i = 0; i <= m; ++i)
            if (i != worst) c += x[i];
        c /= m;
        const Eigen::VectorXd xr = c + (c - x[worst]);
        const double fr = f(xr);
        if (fr < fx[best]) {
            const Eigen::VectorXd xe = c + 2.0 * (c - x[worst]);
            const double fe = f(xe);
            if (fe < fr) { x[worst] = xe; fx[worst] = fe; }
            else { x[worst] = xr; fx[worst] = fr; }
        } else if (fr < fx[second]) {
            x[worst] = xr; fx[worst] = fr;
        } else {
            const Eigen::VectorXd xc = fr < fx[worst] ? Eigen::VectorXd(c + 0.5 * (xr - c))
                                                      : Eigen::VectorXd(c + 0.5 * (x[worst] - c));
            const double fc = f(xc);
            if (fc < std::min(fr, fx[worst])) {
                x[worst] = xc; fx[worst] = fc;
            } else {
                for (int i = 0; i <= m; ++i) {
                    if (i == best) continue;
                    x[i] = x[best] + 0.5 * (x[i] - x[best]);
                    fx[i] = f(x[i]);
                }
            }
        }
    }
    int b = 0;
    for (int i = 1; i <= m; ++i)
        if (fx[i] < fx[b]) b = i;
    return {x[b], fx[b]};
}

}  // namespace

DirectionResult max_min_direction(int n, const std::vector<Subspace>& subspaces, const MaxMinOptions& opts) {
    require(n >= 1 && n <= kMaxDim, "max_min_direction: unsupported dimension");
    for (const auto& s : subspaces) {
        require(s.ambient_dim() == n, "max_min_direction: dimension mismatch");
        if (!s.is_proper()) throw ContractViolation("max_min_direction: full-dimensional subspace, no regular vector exists");
    }
    if (subspaces.empty()) return {e_last(n), kInf};

    const SphereCover& cover = cached_cover(n, opts.cover_t);
    kernels::DirectionBatch batch(n, cover.points);
    std::vector<double> m(cover.points.size());
    kernels::min_distance(batch, subspaces, m);
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        if (excluded(cover.points[i], opts.exclusions)) continue;
        idx.push_back(i);
    }
    if (idx.empty()) throw DegenerateInput("max_min_direction: exclusions remove every direction");
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return m[a] > m[b] || (m[a] == m[b] && a < b); });

    // distinct seeds for refinement
    std::vector<Vec> seeds;
    for (int i : idx) {
        const Vec& p = cover.points[i];
        bool near = false;
        for (const auto& s : seeds)
            if (projective_distance(s, p) < 2.0 * opts.cover_t) { near = true; break; }
        if (!near) seeds.push_back(p);
        if (static_cast<int>(seeds.size()) >= opts.refine_candidates) break;
    }

    DirectionResult best{seeds.front(), score(seeds.front(), subspaces, opts.exclusions)};
    if (n == 1) return best;
    for (const auto& s : seeds) {
        Frame f(s);
        auto chart = [&](const Eigen::VectorXd& w) {
            Vec v = s;
            for (int i = 0; i < n - 1; ++i) v += w(i) * f.axis(i);
            return Vec(v.normalized());
        };
        auto obj = [&](const Eigen::VectorXd& w) {
            const double sc = score(chart(w), subspaces, opts.exclusions);
            return sc == -kInf ? 10.0 : -sc;
        };
        auto [w, fw] = nelder_mead(obj, Eigen::VectorXd::Zero(n - 1), opts.cover_t / 2, opts.nm_iterations);
        const Vec cand = chart(w);
        const double sc = score(cand, subspaces, opts.exclusions);
        if (sc > best.margin) best = {cand, sc};
    }
    // canonical sign: last nonzero coordinate positive
    for (int i = n - 1; i >= 0; --i) {
        if (std::abs(best.lambda(i)) > 1e-12) {
            if (best.lambda(i) < 0) best.lambda = -best.lambda;
            break;
        }
    }
    return best;
}

namespace {

struct Arc {
    Vec y, mu;
    Vec at(double phi) const { return std::cos(phi) * y + std::sin(phi) * mu; }
};

}  // namespace

DirectionResult fiber_direction_search(const Vec& mu, const Vec& l, double r,
                                       const std::vector<Subspace>& subspaces, const FiberOptions& opts) {
    const int n = static_cast<int>(mu.size());
    require(l.size() == n, "fiber_direction_search: dimension mismatch");
    require(r > 0, "fiber_direction_search: r must be positive");
    for (const auto& s : subspaces) require(s.ambient_dim() == n, "fiber_direction_search: dimension mismatch");

    Arc arc;
    arc.mu = mu;
    arc.y = opts.target ? tilde_pi(mu, *opts.target) : tilde_pi(mu, l);

    // <λ(φ), l> = ρ cos(φ - φ0); the ball is <λ, l> > 1 - r^2/2
    const double a = arc.y.dot(l), b = mu.dot(l);
    const double rho = std::hypot(a, b);
    const double c = 1.0 - r * r / 2.0;
    const double phi0 = std::atan2(b, a);
    if (!(rho > 0) || c / rho >= 1.0) throw DegenerateInput("fiber_direction_search: empty arc");
    const double w = c / rho <= -1.0 ? std::numbers::pi : std::acos(c / rho);
    const double half = std::numbers::pi / 2;
    const double lo = std::max(phi0 - w, -half) + opts.tol;
    const double hi = std::min(phi0 + w, half) - opts.tol;
    if (!(lo < hi)) throw DegenerateInput("fiber_direction_search: empty arc after tolerance");

    auto f = [&](double phi) { return dist_to_set(arc.at(phi), subspaces); };

    if (subspaces.empty()) {
        if (!opts.target) return {l, kInf};
        return {arc.at(std::clamp(phi0, lo, hi)), kInf};
    }

    const int N = std::max(opts.scan_points, 3);
    double best_phi = lo, best = -1;
    const double h = (hi - lo) / (N - 1);
    for (int i = 0; i < N; ++i) {
        const double phi = lo + i * h;
        const double v = f(phi);
        if (v > best) { best = v; best_phi = phi; }
    }
    // golden-section around the best scan point
    double x0 = std::max(lo, best_phi - h), x1 = std::min(hi, best_phi + h);
    const double g = (std::sqrt(5.0) - 1) / 2;
    double p = x1 - g * (x1 - x0), q = x0 + g * (x1 - x0);
    double fp = f(p), fq = f(q);
    for (int it = 0; it < opts.golden_iterations; ++it) {
        if (fp > fq) { x1 = q; q = p; fq = fp; p = x1 - g * (x1 - x0); fp = f(p); }
        else { x0 = p; p = q; fp = fq; q = x0 + g * (x1 - x0); fq = f(q); }
    }
    double phi_star = fp > fq ? p : q;
    double v_star = std::max(fp, fq);
    if (best > v_star) { phi_star = best_phi; v_star = best; }
    Vec lam = arc.at(phi_star);

    for (const auto& cand : opts.preferred) {
        if (cand.size() != n) continue;
        const double cy = cand.dot(arc.y), cm = cand.dot(mu);
        if (cy <= 0 || (cand - cy * arc.y - cm * mu).norm() > 1e-9) continue;
        const double phi = std::atan2(cm, cy);
        if (phi < lo || phi > hi) continue;
        const double v = dist_to_set(cand, subspaces);
        if (v >= opts.accept_ratio * v_star) return {cand, v};
    }
    return {lam, v_star};
}

Vec fiber_tangent(const Vec& mu, const Vec& x) {
    const Vec y = tilde_pi(mu, x);
    const double phi = std::atan2(x.dot(mu), x.dot(y));
    return -std::sin(phi) * y + std::cos(phi) * mu;
}

}  // namespace regvec::geom
