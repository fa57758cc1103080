#include "regvec/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "regvec/errors.hpp"
#include "regvec/util/parallel.hpp"

namespace regvec::verify {

namespace {

// Hyperspherical grid: the last coordinate is cos ψ, the rest a scaled
// grid on the sphere one dimension down with proportionally fewer points.
void sphere_grid(int n, int res, std::vector<Vec>& out) {
    if (n == 1) {
        out.push_back(Vec::Constant(1, 1.0));
        out.push_back(Vec::Constant(1, -1.0));
        return;
    }
    if (n == 2) {
        const int m = std::max(res, 1) * 2;
        for (int i = 0; i < m; ++i) {
            const double t = 2 * std::numbers::pi * i / m;
            Vec v(2);
            v << std::cos(t), std::sin(t);
            out.push_back(v);
        }
        return;
    }
    for (int j = 0; j <= res; ++j) {
        const double psi = std::numbers::pi * j / res;
        const double r = std::sin(psi);
        std::vector<Vec> ring;
        const int sub = std::max(1, static_cast<int>(std::ceil(res * r)));
        if (j == 0 || j == res) ring.push_back(Vec::Zero(n - 1));
        else sphere_grid(n - 1, sub, ring);
        for (const auto& w : ring) {
            Vec v(n);
            v.head(n - 1) = r * w;
            v(n - 1) = std::cos(psi);
            out.push_back(v);
        }
    }
}

}  // namespace

GridArgmax grid_sphere_argmax(int n, const std::vector<geom::Subspace>& subspaces, int resolution) {
    require(n >= 1 && n <= 4, "grid_sphere_argmax: n must be in 1..4");
    require(resolution >= 1, "grid_sphere_argmax: resolution must be positive");
    Vec en = Vec::Zero(n);
    en(n - 1) = 1;
    const double pitch = std::numbers::pi / resolution * std::sqrt(static_cast<double>(n - 1));
    if (subspaces.empty()) return {en, kInf, pitch};
    std::vector<Vec> grid;
    sphere_grid(n, resolution, grid);
    std::vector<double> val(grid.size());
    util::parallel_for(static_cast<int>(grid.size()), [&](int i) {
        double m = kInf;
        for (const auto& P : subspaces) m = std::min(m, geom::dist_to_subspace(grid[i], P));
        val[i] = m;
    });
    const auto best = std::max_element(val.begin(), val.end()) - val.begin();
    return {grid[best], val[best], pitch};
}

BilipschitzEstimate estimate_bilipschitz(const std::function<Vec(const Vec&)>& h, const Vec& lo, const Vec& hi,
                                         int n_pairs, std::uint64_t seed) {
    const int n = static_cast<int>(lo.size());
    const double size = (hi - lo).norm();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    auto point = [&] {
        Vec p(n);
        for (int i = 0; i < n; ++i) p(i) = lo(i) + (hi(i) - lo(i)) * u(rng);
        return p;
    };
    std::normal_distribution<double> g(0, 1);
    BilipschitzEstimate est;
    for (int i = 0; i < n_pairs; ++i) {
        const Vec p = point();
        Vec q;
        if (i % 2 == 0) {
            Vec d(n);
            for (int j = 0; j < n; ++j) d(j) = g(rng);
            q = p + d.normalized() * size * std::pow(10.0, -4 * u(rng));
        } else {
            q = point();
        }
        const double dd = (p - q).norm();
        const Vec hp = h(p), hq = h(q);
        const double di = (hp - hq).norm();
        if (dd < 10 * kEpsGeom || di < 10 * kEpsGeom) {
            ++est.skipped;
            continue;
        }
        ++est.pairs;
        if (di / dd > est.L_fwd) est.L_fwd = di / dd, est.fwd_p = p, est.fwd_q = q;
        if (dd / di > est.L_inv) est.L_inv = dd / di, est.inv_p = p, est.inv_q = q;
    }
    return est;
}

BilipschitzEstimate estimate_bilipschitz(const flatten::ZigzagMap& h, const Vec& lo, const Vec& hi, int n_pairs,
                                         std::uint64_t seed) {
    return estimate_bilipschitz([&h](const Vec& q) { return h.apply(q); }, lo, hi, n_pairs, seed);
}

CoverReport check_graph_cover(const flatten::ZigzagMap& h, const std::vector<flatten::ImageSample>& image,
                              const CoverOptions& opts) {
    CoverReport rep;
    rep.samples = static_cast<int>(image.size());
    rep.slope_bound = h.certificate().L_eta;
    const int b = h.system().count();
    if (image.empty()) return rep;
    const int n = static_cast<int>(image.front().image.size());

    // Floors are ordered in k, so the nearest one sits next to the last floor
    // at or below the sample.
    std::vector<double> res(image.size(), kInf);
    std::vector<int> near(image.size(), 0);
    util::parallel_for(static_cast<int>(image.size()), [&](int i) {
        if (b == 0) return;
        const Vec x = image[i].image.head(n - 1);
        const double y = image[i].image(n - 1);
        int lo = 1, hi = b;
        while (lo < hi) {
            const int mid = (lo + hi + 1) / 2;
            if (h.floor(mid, x) <= y) lo = mid;
            else hi = mid - 1;
        }
        double r = std::abs(y - h.floor(lo, x));
        near[i] = lo;
        if (lo < b) {
            const double up = std::abs(y - h.floor(lo + 1, x));
            if (up < r) r = up, near[i] = lo + 1;
        }
        res[i] = r;
    });
    for (size_t i = 0; i < image.size(); ++i) {
        rep.max_residual = std::max(rep.max_residual, res[i]);
        if (!(res[i] <= opts.residual_tol))
            rep.violations.push_back({static_cast<int>(i), image[i].simplex, "off every floor", res[i]});
    }

    // A branch is one simplex on one floor: a simplex split by several H_k
    // lands on several floors, possibly above one another.
    std::map<std::pair<int, int>, std::vector<int>> branches;
    for (size_t i = 0; i < image.size(); ++i)
        if (res[i] <= opts.residual_tol) branches[{image[i].simplex, near[i]}].push_back(static_cast<int>(i));
    for (auto& [key, ids] : branches) {
        if (ids.size() > static_cast<size_t>(opts.max_branch_points)) {
            std::vector<int> keep;
            const double step = static_cast<double>(ids.size()) / opts.max_branch_points;
            for (int j = 0; j < opts.max_branch_points; ++j) keep.push_back(ids[static_cast<size_t>(j * step)]);
            ids = std::move(keep);
        }
        double worst = 0, worst_excess = 0;
        int at = -1;
        for (size_t a = 0; a < ids.size(); ++a)
            for (size_t c = a + 1; c < ids.size(); ++c) {
                const Vec& p = image[ids[a]].image;
                const Vec& q = image[ids[c]].image;
                const double dx = (p.head(n - 1) - q.head(n - 1)).norm();
                const double dy = std::abs(p(n - 1) - q(n - 1));
                if (dx < 10 * kEpsGeom && dy < 10 * kEpsGeom) continue;
                if (dx > 0) worst = std::max(worst, dy / dx);
                // both points are within their residuals of one L_eta-Lipschitz graph
                const double excess =
                    dy - (rep.slope_bound + opts.slope_tol) * dx - res[ids[a]] - res[ids[c]];
                if (excess > worst_excess) worst_excess = excess, at = ids[a];
            }
        rep.max_slope = std::max(rep.max_slope, worst);
        if (at >= 0)
            rep.violations.push_back({at, key.first, "secant slope above L_eta on floor " + std::to_string(key.second),
                                      worst});
    }
    return rep;
}

int component_count(const std::function<bool(const Vec&)>& inside, const Vec& lo, const Vec& hi, double pitch) {
    require(pitch > 0, "component_count: pitch must be positive");
    const int n = static_cast<int>(lo.size());
    std::vector<long> dims(n), stride(n);
    long total = 1;
    for (int i = 0; i < n; ++i) {
        dims[i] = static_cast<long>(std::floor((hi(i) - lo(i)) / pitch)) + 1;
        stride[i] = total;
        total *= dims[i];
        require(total <= 50'000'000, "component_count: grid too large");
    }
    std::vector<char> in(static_cast<size_t>(total));
    util::parallel_for(static_cast<int>(total), [&](int idx) {
        Vec p(n);
        long r = idx;
        for (int i = 0; i < n; ++i) {
            p(i) = lo(i) + pitch * static_cast<double>(r % dims[i]);
            r /= dims[i];
        }
        in[idx] = inside(p) ? 1 : 0;
    });
    std::vector<long> parent(static_cast<size_t>(total));
    std::iota(parent.begin(), parent.end(), 0L);
    auto find = [&](long a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (long idx = 0; idx < total; ++idx) {
        if (!in[idx]) continue;
        for (int i = 0; i < n; ++i) {
            if ((idx / stride[i]) % dims[i] + 1 >= dims[i]) continue;
            const long nb = idx + stride[i];
            if (in[nb]) parent[find(idx)] = find(nb);
        }
    }
    int count = 0;
    for (long idx = 0; idx < total; ++idx)
        if (in[idx] && find(idx) == idx) ++count;
    return count;
}

}  // namespace regvec::verify
