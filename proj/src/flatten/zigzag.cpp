#include "regvec/flatten/zigzag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "regvec/errors.hpp"
#include "regvec/pl/sampling.hpp"
#include "regvec/util/parallel.hpp"

namespace regvec::flatten {

using systems::RegularSystem;

namespace detail {

// h on run r:  q -> (X_r(s), G_r(s) + <q, Λ_r>),  s the Λ_r shadow of q,
// with G_r = D_r - base_r,  D_r the image height of the run's floor B_r.
// Shadows move between consecutive runs along B_r, which both directions
// describe as graphs: base_r for Λ_r and top_{r-1} for Λ_{r-1}.
struct ZigzagData {
    RegularSystem S;
    std::vector<Run> runs;
    std::vector<geom::Frame> frames;  // per run
    std::vector<int> run_of;          // per slab
    int n;

    explicit ZigzagData(RegularSystem sys) : S(std::move(sys)), n(S.ambient_dim()) {}

    const lip::LipFn& base(int r) const { return S.slab(runs[r].first).lower; }
    const lip::LipFn& top(int r) const { return S.slab(runs[r].last).upper; }

    // Walk up from the base chart to run r under the image shadow x.
    // Returns s_r; D and b receive D_r and base_r(s_r).
    Vec climb(const Vec& x, int r, double& D, double& b) const {
        Vec s = x;
        D = 0;
        b = 0;
        for (int j = 0; j < r; ++j) {
            const double t = top(j)(s);
            const Vec P = frames[j].embed(s, t);
            D += t - b;
            s = frames[j + 1].shadow(P);
            b = frames[j + 1].height(P);
        }
        return s;
    }

    Vec forward(const Vec& q) const {
        const int r = run_of[systems::slab_membership(S, q)];
        const geom::Frame& F = frames[r];
        Vec out(n);
        if (r == 0) {
            out.head(n - 1) = F.shadow(q);
            out(n - 1) = F.height(q);
            return out;
        }
        Vec s = F.shadow(q);
        double b = base(r)(s);
        const double u = F.height(q) - b;
        Vec P = F.embed(s, b);
        double D = 0;
        for (int j = r - 1;; --j) {
            s = frames[j].shadow(P);
            const double t = frames[j].height(P);
            if (j == 0) {
                D += t;
                break;
            }
            b = base(j)(s);
            D += t - b;
            P = frames[j].embed(s, b);
        }
        out.head(n - 1) = s;
        out(n - 1) = D + u;
        return out;
    }

    Vec inverse(const Vec& p) const {
        const double y = p(n - 1);
        Vec s = p.head(n - 1);
        double D = 0, b = 0;
        int r = 0;
        const int last = static_cast<int>(runs.size()) - 1;
        while (r < last) {
            const double t = top(r)(s);
            const double next = D + t - b;
            if (y <= next) break;  // on the floor: lower run
            const Vec P = frames[r].embed(s, t);
            s = frames[r + 1].shadow(P);
            b = frames[r + 1].height(P);
            D = next;
            ++r;
        }
        return frames[r].embed(s, b + (y - D));
    }

    double floor(int k, const Vec& x) const {
        const int r = run_of[k];
        double D, b;
        const Vec s = climb(x, r, D, b);
        return D + S.slab(k).lower(s) - b;
    }
};

}  // namespace detail

namespace {

class FloorNode : public lip::Node {
public:
    FloorNode(std::shared_ptr<const detail::ZigzagData> d, int k, double lip)
        : Node(d->n - 1, lip), d_(std::move(d)), k_(k) {}
    double eval(const Vec& x) const override { return d_->floor(k_, x); }
    std::string kind() const override { return "zigzag-floor"; }

private:
    std::shared_ptr<const detail::ZigzagData> d_;
    int k_;
};

double norm2(double a, double b, double c, double d) {
    Eigen::Matrix2d M;
    M << a, b, c, d;
    return Eigen::JacobiSVD<Eigen::Matrix2d>(M).singularValues()(0);
}

}  // namespace

const RegularSystem& ZigzagMap::system() const { return d_->S; }
const std::vector<Run>& ZigzagMap::runs() const { return d_->runs; }
int ZigzagMap::run_of_slab(int k) const { return d_->run_of.at(static_cast<size_t>(k)); }
const std::vector<lip::LipFn>& ZigzagMap::floor_fns() const { return floors_; }
Vec ZigzagMap::apply(const Vec& q) const {
    require(q.size() == d_->n, "apply: dimension mismatch");
    return d_->forward(q);
}
Vec ZigzagMap::apply_inverse(const Vec& p) const {
    require(p.size() == d_->n, "apply_inverse: dimension mismatch");
    return d_->inverse(p);
}
double ZigzagMap::floor(int k, const Vec& x) const {
    require(k >= 1 && k <= d_->S.count(), "floor: index out of range");
    return d_->floor(k, x);
}

const Certificate& ZigzagMap::certificate() const { return cert_; }

ZigzagMap build_flattening(const RegularSystem& S, const FlattenOptions& opts) {
    if (opts.validate) {
        const auto rep = systems::validate(S, nullptr, opts.validation);
        if (!rep.ok())
            throw VerificationFailure("build_flattening: system fails validation (" +
                                      std::to_string(rep.monotonicity_total) + " monotonicity, " +
                                      std::to_string(rep.agreement_total) + " agreement violations)");
    }
    auto d = std::make_shared<detail::ZigzagData>(S);
    const int b = S.count();
    d->run_of.assign(static_cast<size_t>(b) + 1, 0);
    for (int k = 0; k <= b; ++k) {
        if (k == 0 || S.direction(k) != S.direction(k - 1)) d->runs.push_back({k, k, S.direction(k)});
        d->runs.back().last = k;
        d->run_of[k] = static_cast<int>(d->runs.size()) - 1;
    }
    for (const auto& r : d->runs) d->frames.emplace_back(r.direction);

    // Transition to run r across B_r: ψ and ψ^{-1} stretch shadows by at most
    // 1 + L sinθ and 1 + L' sinθ; G picks up sinθ + L (1 - cosθ).
    Certificate cert;
    for (size_t r = 1; r < d->runs.size(); ++r) {
        Run& cur = d->runs[r];
        const Run& prev = d->runs[r - 1];
        const double c = std::clamp(cur.direction.dot(prev.direction), -1.0, 1.0);
        const double sn = std::sqrt(std::max(0.0, 1 - c * c));
        const double L = d->base(static_cast<int>(r)).lip();
        const double Lp = d->top(static_cast<int>(r) - 1).lip();
        cur.P = prev.P * (1 + L * sn);
        cur.R = prev.R * (1 + Lp * sn);
        cur.D = prev.D * (1 + L * sn) + sn + L * (1 - c);
    }
    for (const auto& r : d->runs) {
        cert.L_fwd = std::max(cert.L_fwd, norm2(r.P, 0, r.D, 1));
        cert.L_inv = std::max(cert.L_inv, norm2(r.R, 0, r.D * r.R, 1));
    }

    ZigzagMap h;
    h.d_ = d;
    for (int k = 1; k <= b; ++k) {
        const Run& r = d->runs[d->run_of[k]];
        const double L = (r.D + S.slab(k).lower.lip()) * r.R;
        cert.L_eta = std::max(cert.L_eta, L);
        h.floors_.emplace_back(std::make_shared<FloorNode>(d, k, L));
    }
    cert.alpha_reg = 1 / std::sqrt(1 + cert.L_eta * cert.L_eta);
    h.cert_ = cert;
    return h;
}

std::vector<ImageSample> flatten_set(const ZigzagMap& h, const pl::PLSet& A, int samples_per_simplex) {
    require(A.ambient_dim() == h.system().ambient_dim(), "flatten_set: dimension mismatch");
    std::vector<std::vector<ImageSample>> per(A.size());
    util::parallel_for(static_cast<int>(A.size()), [&](int i) {
        for (const auto& q : pl::sample_simplex(A.simplices()[i], samples_per_simplex))
            per[i].push_back({q, h.apply(q), i});
    });
    std::vector<ImageSample> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace regvec::flatten
