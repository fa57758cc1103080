#include "regvec/systems/split.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "regvec/errors.hpp"

namespace regvec::systems {

namespace {

// upper where the shadow lies at or before the threshold, lower elsewhere
class ThresholdSelect final : public lip::Node {
public:
    ThresholdSelect(lip::LipFn lower, lip::LipFn upper, double z)
        : Node(1, std::max(lower.lip(), upper.lip())), lower_(std::move(lower)), upper_(std::move(upper)), z_(z) {}
    double eval(const Vec& s) const override { return s(0) <= z_ ? upper_(s) : lower_(s); }
    std::string kind() const override { return "select"; }

private:
    lip::LipFn lower_, upper_;
    double z_;
};

struct LabelGrid {
    Vec lo;
    double pitch = 0;
    int N = 0;
    std::vector<int> label;  // -1 outside the slab
    int at(const Vec& s) const {
        int i = static_cast<int>(std::floor((s(0) - lo(0)) / pitch));
        int j = static_cast<int>(std::floor((s(1) - lo(1)) / pitch));
        i = std::clamp(i, 0, N - 1);
        j = std::clamp(j, 0, N - 1);
        return label[static_cast<size_t>(i) * N + j];
    }
};

// upper on the first `count` components, lower elsewhere
class GridSelect final : public lip::Node {
public:
    GridSelect(lip::LipFn lower, lip::LipFn upper, std::shared_ptr<const LabelGrid> grid, int count)
        : Node(2, std::max(lower.lip(), upper.lip())), lower_(std::move(lower)), upper_(std::move(upper)),
          grid_(std::move(grid)), count_(count) {}
    double eval(const Vec& s) const override {
        const int l = grid_->at(s);
        return (l >= 0 && l < count_) ? upper_(s) : lower_(s);
    }
    std::string kind() const override { return "select"; }

private:
    lip::LipFn lower_, upper_;
    std::shared_ptr<const LabelGrid> grid_;
    int count_;
};

std::pair<Vec, Vec> shadow_box(const geom::Frame& F, const Vec& lo, const Vec& hi) {
    const int n = F.ambient_dim();
    Vec slo = Vec::Constant(n - 1, kInf), shi = Vec::Constant(n - 1, -kInf);
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec c(n);
        for (int i = 0; i < n; ++i) c(i) = (mask >> i) & 1 ? hi(i) : lo(i);
        const Vec s = F.shadow(c);
        slo = slo.cwiseMin(s);
        shi = shi.cwiseMax(s);
    }
    return {slo, shi};
}

struct Detection1D {
    std::vector<double> cuts;  // switch points between consecutive components
};

Detection1D detect_1d(const Slab& s, const geom::Frame& F, const SplitOptions& o) {
    auto [slo, shi] = shadow_box(F, o.box_lo, o.box_hi);
    const int N = o.cells_1d;
    const double h = (shi(0) - slo(0)) / N;
    auto gap = [&](double x) {
        Vec v(1);
        v << x;
        return s.upper(v) - s.lower(v);
    };
    Detection1D d;
    bool prev_pos = false, any = false;
    double last_pos = 0;
    for (int i = 0; i <= N; ++i) {
        const double x = slo(0) + i * h;
        const bool pos = gap(x) > o.gap_threshold;
        if (pos && !prev_pos && any) {
            // refine the end of the previous component
            double a = last_pos, b = last_pos + h;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                (gap(m) > o.gap_threshold ? a : b) = m;
            }
            d.cuts.push_back(b);
        }
        if (pos) { any = true; last_pos = x; }
        prev_pos = pos;
    }
    return d;
}

struct Detection2D {
    std::shared_ptr<LabelGrid> grid;
    int count = 0;
};

Detection2D detect_2d(const Slab& s, const geom::Frame& F, const SplitOptions& o) {
    auto [slo, shi] = shadow_box(F, o.box_lo, o.box_hi);
    auto g = std::make_shared<LabelGrid>();
    g->N = o.cells_2d;
    g->lo = slo;
    g->pitch = std::max(shi(0) - slo(0), shi(1) - slo(1)) / g->N;
    const int N = g->N;
    std::vector<int> parent(static_cast<size_t>(N) * N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<char> pos(parent.size());
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Vec c(2);
            c << slo(0) + (i + 0.5) * g->pitch, slo(1) + (j + 0.5) * g->pitch;
            pos[static_cast<size_t>(i) * N + j] = s.upper(c) - s.lower(c) > o.gap_threshold;
        }
    const int outside = -1;
    int boundary_root = outside;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const int id = i * N + j;
            if (!pos[id]) continue;
            if (i + 1 < N && pos[id + N]) parent[find(id)] = find(id + N);
            if (j + 1 < N && pos[id + 1]) parent[find(id)] = find(id + 1);
            // components leaving the box are assumed to meet outside it
            if (i == 0 || j == 0 || i == N - 1 || j == N - 1) {
                if (boundary_root == outside) boundary_root = id;
                else parent[find(id)] = find(boundary_root);
            }
        }
    g->label.assign(parent.size(), -1);
    std::vector<int> root_label(parent.size(), -1);
    int count = 0;
    for (size_t id = 0; id < parent.size(); ++id) {
        if (!pos[id]) continue;
        const int r = find(static_cast<int>(id));
        if (root_label[r] < 0) root_label[r] = count++;
        g->label[id] = root_label[r];
    }
    return {g, count};
}

RegularSystem replace_slab(const RegularSystem& S, int k, const std::vector<Slab>& repl) {
    std::vector<Slab> out;
    for (int j = 0; j < k; ++j) out.push_back(S.slab(j));
    out.insert(out.end(), repl.begin(), repl.end());
    for (int j = k + 1; j <= S.count(); ++j) out.push_back(S.slab(j));
    return RegularSystem(S.ambient_dim(), std::move(out));
}

}  // namespace

int count_slab_components(const RegularSystem& S, int k, const SplitOptions& opts) {
    require(k >= 0 && k <= S.count(), "count_slab_components: slab index out of range");
    const Slab& s = S.slab(k);
    if (s.lower.is_sentinel() || s.upper.is_sentinel()) return 1;
    const int d = S.ambient_dim() - 1;
    require(opts.box_lo.size() == S.ambient_dim() && opts.box_hi.size() == S.ambient_dim(),
            "split_components: box dimension mismatch");
    if (d == 0) {
        const Vec e(0);
        return s.upper(e) - s.lower(e) > opts.gap_threshold ? 1 : 0;
    }
    if (d == 1) {
        const auto det = detect_1d(s, S.frame(k), opts);
        return static_cast<int>(det.cuts.size()) + 1;
    }
    if (d == 2) return detect_2d(s, S.frame(k), opts).count;
    throw ContractViolation("split_components: shadows of dimension > 2 are not supported");
}

RegularSystem split_components(const RegularSystem& S, int k, const SplitOptions& opts) {
    require(k >= 0 && k <= S.count(), "split_components: slab index out of range");
    const Slab& s = S.slab(k);
    if (s.lower.is_sentinel() || s.upper.is_sentinel()) return S;
    const int d = S.ambient_dim() - 1;
    if (d == 0) return S;
    std::vector<lip::LipFn> eta;
    if (d == 1) {
        const auto det = detect_1d(s, S.frame(k), opts);
        for (double z : det.cuts) eta.emplace_back(std::make_shared<ThresholdSelect>(s.lower, s.upper, z));
    } else if (d == 2) {
        const auto det = detect_2d(s, S.frame(k), opts);
        for (int i = 1; i < det.count; ++i)
            eta.emplace_back(std::make_shared<GridSelect>(s.lower, s.upper, det.grid, i));
    } else {
        throw ContractViolation("split_components: shadows of dimension > 2 are not supported");
    }
    if (eta.empty()) return S;
    std::vector<Slab> repl;
    lip::LipFn below = s.lower;
    for (const auto& f : eta) {
        repl.push_back({s.direction, below, f});
        below = f;
    }
    repl.push_back({s.direction, below, s.upper});
    return replace_slab(S, k, repl);
}

}  // namespace regvec::systems
