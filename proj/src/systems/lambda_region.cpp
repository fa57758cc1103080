#include "regvec/systems/lambda_region.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <string>

#include "regvec/errors.hpp"

namespace regvec::systems {

namespace {

SphereMesh icosphere(int min_vertices) {
    const double t = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec> P;
    auto add = [&](double x, double y, double z) {
        Vec v(3);
        v << x, y, z;
        P.push_back(v.normalized());
    };
    add(-1, t, 0); add(1, t, 0); add(-1, -t, 0); add(1, -t, 0);
    add(0, -1, t); add(0, 1, t); add(0, -1, -t); add(0, 1, -t);
    add(t, 0, -1); add(t, 0, 1); add(-t, 0, -1); add(-t, 0, 1);
    std::vector<std::array<int, 3>> F = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
        {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    while (static_cast<int>(P.size()) < min_vertices) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            P.push_back((P[a] + P[b]).normalized());
            return mid[key] = static_cast<int>(P.size()) - 1;
        };
        std::vector<std::array<int, 3>> G;
        for (const auto& f : F) {
            const int a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
            G.push_back({f[0], a, c});
            G.push_back({f[1], b, a});
            G.push_back({f[2], c, b});
            G.push_back({a, b, c});
        }
        F = std::move(G);
    }
    SphereMesh m;
    m.points = P;
    m.adjacency.assign(P.size(), {});
    std::map<std::pair<int, int>, bool> seen;
    for (const auto& f : F)
        for (int i = 0; i < 3; ++i) {
            auto key = std::minmax(f[i], f[(i + 1) % 3]);
            if (seen.emplace(key, true).second) {
                m.adjacency[key.first].push_back(key.second);
                m.adjacency[key.second].push_back(key.first);
            }
        }
    return m;
}

}  // namespace

SphereMesh sphere_mesh(int n, int resolution) {
    SphereMesh m;
    if (n == 1) {
        m.points = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
        m.adjacency = {{}, {}};
        return m;
    }
    if (n == 2) {
        const int N = resolution > 0 ? resolution : 512;
        for (int i = 0; i < N; ++i) {
            const double a = 2 * std::numbers::pi * i / N;
            Vec v(2);
            v << std::cos(a), std::sin(a);
            m.points.push_back(v);
            m.adjacency.push_back({(i + N - 1) % N, (i + 1) % N});
        }
        return m;
    }
    if (n == 3) return icosphere(resolution > 0 ? resolution : 10000);
    throw ContractViolation("sphere_mesh: only n <= 3 is supported");
}

double slab_margin(const Slab& s, const Vec& lambda) {
    double m = kInf;
    for (const auto* f : {&s.lower, &s.upper}) {
        if (f->is_sentinel()) continue;
        m = std::min(m, lip::Hypersurface(s.direction, *f).level()->margin(lambda));
    }
    return m;
}

LambdaRegion lambda_region(const RegularSystem& S, int k, int mesh_res, double threshold) {
    require(k >= 1 && k <= S.count(), "lambda_region: slab index out of range");
    const Slab& s = S.slab(k);
    std::vector<lip::LevelPtr> levels;
    for (const auto* f : {&s.lower, &s.upper})
        if (!f->is_sentinel()) levels.push_back(lip::Hypersurface(s.direction, *f).level());
    auto margin = [&](const Vec& l) {
        double m = kInf;
        for (const auto& L : levels) m = std::min(m, L->margin(l));
        return m;
    };
    LambdaRegion R;
    R.center_margin = margin(s.direction);
    if (!(R.center_margin > threshold))
        throw ContractViolation("lambda_region: λ_" + std::to_string(k) + " is not regular for its slab (margin " +
                                std::to_string(R.center_margin) + ")");
    R.mesh = sphere_mesh(S.ambient_dim(), mesh_res);
    const int N = static_cast<int>(R.mesh.points.size());
    std::vector<char> ok(N), seen(N, 0);
    int start = -1;
    double best = kInf;
    for (int i = 0; i < N; ++i) {
        ok[i] = margin(R.mesh.points[i]) > threshold;
        const double d = (R.mesh.points[i] - s.direction).norm();
        if (ok[i] && d < best) { best = d; start = i; }
    }
    if (start < 0) return R;
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
        const int i = q.front();
        q.pop();
        R.component.push_back(i);
        for (int j : R.mesh.adjacency[i])
            if (ok[j] && !seen[j]) { seen[j] = 1; q.push(j); }
    }
    return R;
}

}  // namespace regvec::systems
