#include "regvec/lip/surface.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <sstream>

#include "regvec/errors.hpp"
#include "regvec/pl/tangent.hpp"

namespace regvec::lip {

double Level::margin(const Vec& d) const {
    const double g = grad_bound();
    if (!(g > 0)) return -kInf;
    return rate(d) / g;
}

namespace {

class GraphLevel final : public Level {
public:
    GraphLevel(const Vec& lambda, LipFn xi) : frame_(lambda), xi_(std::move(xi)) {
        require(!xi_.is_sentinel(), "graph_level: sentinel height");
        require(xi_.dim() == frame_.ambient_dim() - 1, "graph_level: domain dimension mismatch");
        if (auto a = xi_.affine()) {
            Vec g = frame_.embed(a->grad, 0.0);
            aff_ = AffineForm{frame_.direction() - g, a->offset};
        }
    }
    int dim() const override { return frame_.ambient_dim(); }
    double value(const Vec& q) const override {
        if (aff_) return aff_->grad.dot(q) - aff_->offset;
        return frame_.height(q) - xi_(frame_.shadow(q));
    }
    double rate(const Vec& d) const override {
        if (aff_) return aff_->grad.dot(d);
        const double c = frame_.direction().dot(d);
        const double s = std::sqrt(std::max(0.0, d.squaredNorm() - c * c));
        return c - xi_.lip() * s;
    }
    double grad_bound() const override {
        if (aff_) return aff_->grad.norm();
        return std::sqrt(1.0 + xi_.lip() * xi_.lip());
    }
    std::optional<AffineForm> affine() const override { return aff_; }

private:
    geom::Frame frame_;
    LipFn xi_;
    std::optional<AffineForm> aff_;
};

class CylinderLevel final : public Level {
public:
    CylinderLevel(const Vec& e, LevelPtr inner) : frame_(e), inner_(std::move(inner)) {
        require(inner_ != nullptr, "cylinder_level: null inner level");
        require(inner_->dim() == frame_.ambient_dim() - 1, "cylinder_level: dimension mismatch");
        if (auto a = inner_->affine()) aff_ = AffineForm{frame_.embed(a->grad, 0.0), a->offset};
    }
    int dim() const override { return frame_.ambient_dim(); }
    double value(const Vec& q) const override {
        if (aff_) return aff_->grad.dot(q) - aff_->offset;
        return inner_->value(frame_.shadow(q));
    }
    double rate(const Vec& d) const override {
        if (aff_) return aff_->grad.dot(d);
        return inner_->rate(frame_.shadow(d));
    }
    double grad_bound() const override { return aff_ ? aff_->grad.norm() : inner_->grad_bound(); }
    std::optional<AffineForm> affine() const override { return aff_; }

private:
    geom::Frame frame_;
    LevelPtr inner_;
    std::optional<AffineForm> aff_;
};

class RegraphNode final : public Node {
public:
    RegraphNode(LevelPtr level, const Vec& lambda, double rate, double lip, RegraphOptions opts)
        : Node(level->dim() - 1, lip), level_(std::move(level)), frame_(lambda), rate_(rate), opts_(opts) {}

    double eval(const Vec& y) const override {
        const Vec p0 = frame_.embed(y, 0.0);
        const Vec& d = frame_.direction();
        auto F = [&](double t) { return level_->value(p0 + t * d); };
        const double f0 = F(0.0);
        if (f0 == 0.0) return 0.0;
        // F grows at least at rate_ along d, so the root lies in [0, -f0/rate_]
        double t1 = -f0 / rate_;
        t1 += (t1 > 0 ? 1.0 : -1.0) * 1e-12 * (1.0 + std::abs(t1));
        double f1 = F(t1);
        int k = 0;
        while ((f1 > 0) == (f0 > 0) && f1 != 0.0) {
            if (++k > opts_.max_doublings) {
                std::ostringstream os;
                os << "regraph: no sign change along fiber y = [" << y.transpose() << "]";
                throw NumericFailure(os.str());
            }
            t1 *= 2.0;
            f1 = F(t1);
        }
        if (f1 == 0.0) return t1;
        double a = 0.0, b = t1, fa = f0, fb = f1;
        if (a > b) { std::swap(a, b); std::swap(fa, fb); }
        boost::uintmax_t iters = static_cast<boost::uintmax_t>(opts_.max_iterations);
        auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= 1e-14 * (1.0 + std::abs(lo)); };
        auto r = boost::math::tools::toms748_solve(F, a, b, fa, fb, tol, iters);
        const double t = 0.5 * (r.first + r.second);
        if (!std::isfinite(t)) throw NumericFailure("regraph: non-finite root");
        return t;
    }
    std::string kind() const override { return "regraph"; }
    std::shared_ptr<const Level> source_level() const override { return level_; }
    const Vec& direction() const { return frame_.direction(); }

private:
    LevelPtr level_;
    geom::Frame frame_;
    double rate_;
    RegraphOptions opts_;
};

}  // namespace

LevelPtr graph_level(const Vec& lambda, const LipFn& xi) { return std::make_shared<GraphLevel>(lambda, xi); }

LevelPtr cylinder_level(const Vec& e, LevelPtr inner) {
    return std::make_shared<CylinderLevel>(e, std::move(inner));
}

Hypersurface::Hypersurface(Vec direction, LipFn height) : frame_(direction), height_(std::move(height)) {
    require(height_.valid(), "Hypersurface: uninitialized height");
    require(height_.dim() == frame_.ambient_dim() - 1, "Hypersurface: height domain dimension mismatch");
    if (height_.is_sentinel()) return;
    if (const auto* rg = dynamic_cast<const RegraphNode*>(height_.node().get())) {
        if (rg->direction() == frame_.direction()) {
            level_ = rg->source_level();
            return;
        }
    }
    level_ = graph_level(frame_.direction(), height_);
}

double Hypersurface::signed_height(const Vec& q) const {
    if (height_.is_pos_inf()) return -kInf;
    if (height_.is_neg_inf()) return kInf;
    return frame_.height(q) - height_(frame_.shadow(q));
}

Side below(const Hypersurface& H, const Vec& q, double eps) {
    const double v = H.signed_height(q);
    if (v < -eps) return Side::Below;
    if (v > eps) return Side::Above;
    return Side::On;
}

LipFn regraph(const LevelPtr& level, const Vec& lambda_prime, std::optional<double> margin,
              const RegraphOptions& opts) {
    require(level != nullptr, "regraph: null level");
    require(lambda_prime.size() == level->dim(), "regraph: dimension mismatch");
    const double cert = level->margin(lambda_prime);
    const double m = margin ? *margin : cert;
    if (!(m > 0)) throw ContractViolation("regraph: direction is not regular for the surface (margin " +
                                          std::to_string(m) + ")");
    const geom::Frame F(lambda_prime);
    if (auto a = level->affine()) {
        // a.(embed(y) + t λ') = c
        const double ad = a->grad.dot(lambda_prime);
        if (!(ad > kEpsGeom * a->grad.norm())) throw ContractViolation("regraph: direction is tangent to the plane");
        Vec g(F.ambient_dim() - 1);
        for (int i = 0; i < g.size(); ++i) g(i) = -a->grad.dot(F.axis(i)) / ad;
        return affine(g, a->offset / ad);
    }
    double rate = level->rate(lambda_prime);
    if (!(rate > 0)) rate = m * level->grad_bound();
    return LipFn(std::make_shared<RegraphNode>(level, lambda_prime, rate, pl::slope_bound(m), opts));
}

Hypersurface regraph(const Hypersurface& H, const Vec& lambda_prime, std::optional<double> margin,
                     const RegraphOptions& opts) {
    if (H.height().is_sentinel()) return Hypersurface(lambda_prime, H.height());
    return Hypersurface(lambda_prime, regraph(H.level(), lambda_prime, margin, opts));
}

}  // namespace regvec::lip
