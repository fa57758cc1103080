#include "regvec/lip/lipfn.hpp"

#include <algorithm>
#include <cmath>

#include "regvec/errors.hpp"

namespace regvec::lip {

namespace {

class ConstantNode final : public Node {
public:
    ConstantNode(int dim, double c) : Node(dim, 0.0), c_(c) {}
    double eval(const Vec&) const override { return c_; }
    std::optional<AffineForm> affine() const override {
        if (!std::isfinite(c_)) return std::nullopt;
        return AffineForm{Vec::Zero(dim()), c_};
    }
    std::string kind() const override { return "constant"; }
    double value() const { return c_; }

private:
    double c_;
};

class AffineNode final : public Node {
public:
    AffineNode(Vec g, double b) : Node(static_cast<int>(g.size()), g.norm()), g_(std::move(g)), b_(b) {}
    double eval(const Vec& x) const override { return g_.dot(x) + b_; }
    std::optional<AffineForm> affine() const override { return AffineForm{g_, b_}; }
    std::string kind() const override { return "affine"; }

private:
    Vec g_;
    double b_;
};

class MinMaxNode final : public Node {
public:
    MinMaxNode(LipFn f, LipFn g, bool is_min)
        : Node(f.dim(), std::max(f.lip(), g.lip())), f_(std::move(f)), g_(std::move(g)), min_(is_min) {}
    double eval(const Vec& x) const override {
        const double a = f_(x), b = g_(x);
        return min_ ? std::min(a, b) : std::max(a, b);
    }
    std::string kind() const override { return min_ ? "min" : "max"; }

private:
    LipFn f_, g_;
    bool min_;
};

class ShiftNode final : public Node {
public:
    ShiftNode(LipFn f, double c) : Node(f.dim(), f.lip()), f_(std::move(f)), c_(c) {}
    double eval(const Vec& x) const override { return f_(x) + c_; }
    std::string kind() const override { return "shift"; }

private:
    LipFn f_;
    double c_;
};

class ComposeNode final : public Node {
public:
    ComposeNode(LipFn f, Isometry phi) : Node(f.dim(), f.lip()), f_(std::move(f)), phi_(std::move(phi)) {}
    double eval(const Vec& x) const override { return f_(phi_.apply(x)); }
    std::string kind() const override { return "compose"; }

private:
    LipFn f_;
    Isometry phi_;
};

class OrderStatNode final : public Node {
public:
    OrderStatNode(std::shared_ptr<const std::vector<LipFn>> fns, int j, double lip)
        : Node(fns->front().dim(), lip), fns_(std::move(fns)), j_(j) {}
    double eval(const Vec& x) const override {
        const size_t k = fns_->size();
        double buf[64] = {};
        std::vector<double> big;
        double* v = buf;
        if (k > 64) { big.resize(k); v = big.data(); }
        for (size_t i = 0; i < k; ++i) v[i] = (*fns_)[i](x);
        std::nth_element(v, v + j_, v + k);
        return v[j_];
    }
    std::string kind() const override { return "order-stat"; }

private:
    std::shared_ptr<const std::vector<LipFn>> fns_;
    int j_;
};

const ConstantNode* as_constant(const LipFn& f) { return dynamic_cast<const ConstantNode*>(f.node().get()); }

void same_dim(const LipFn& f, const LipFn& g) {
    require(f.valid() && g.valid(), "LipFn: uninitialized function");
    require(f.dim() == g.dim(), "LipFn: domain dimension mismatch");
}

}  // namespace

bool LipFn::is_pos_inf() const {
    const auto* c = as_constant(*this);
    return c && c->value() == kInf;
}

bool LipFn::is_neg_inf() const {
    const auto* c = as_constant(*this);
    return c && c->value() == -kInf;
}

LipFn constant(int dim, double c) {
    require(!std::isnan(c), "constant: NaN");
    return LipFn(std::make_shared<ConstantNode>(dim, c));
}

LipFn affine(const Vec& grad, double offset) {
    require(grad.allFinite() && std::isfinite(offset), "affine: non-finite coefficients");
    return LipFn(std::make_shared<AffineNode>(grad, offset));
}

LipFn fmin(const LipFn& f, const LipFn& g) {
    same_dim(f, g);
    if (f.is_pos_inf() || g.is_neg_inf()) return g;
    if (g.is_pos_inf() || f.is_neg_inf()) return f;
    if (f.node() == g.node()) return f;
    const auto* cf = as_constant(f);
    const auto* cg = as_constant(g);
    if (cf && cg) return cf->value() <= cg->value() ? f : g;
    return LipFn(std::make_shared<MinMaxNode>(f, g, true));
}

LipFn fmax(const LipFn& f, const LipFn& g) {
    same_dim(f, g);
    if (f.is_neg_inf() || g.is_pos_inf()) return g;
    if (g.is_neg_inf() || f.is_pos_inf()) return f;
    if (f.node() == g.node()) return f;
    const auto* cf = as_constant(f);
    const auto* cg = as_constant(g);
    if (cf && cg) return cf->value() >= cg->value() ? f : g;
    return LipFn(std::make_shared<MinMaxNode>(f, g, false));
}

LipFn shift(const LipFn& f, double c) {
    require(f.valid(), "shift: uninitialized function");
    require(std::isfinite(c), "shift: non-finite offset");
    if (f.is_sentinel() || c == 0.0) return f;
    if (auto a = f.affine()) return affine(a->grad, a->offset + c);
    return LipFn(std::make_shared<ShiftNode>(f, c));
}

LipFn compose_isometry(const LipFn& f, const Isometry& phi) {
    require(f.valid(), "compose_isometry: uninitialized function");
    require(phi.Q.rows() == f.dim() && phi.Q.cols() == f.dim() && phi.b.size() == f.dim(),
            "compose_isometry: dimension mismatch");
    require((phi.Q.transpose() * phi.Q - Mat::Identity(f.dim(), f.dim())).norm() <= 1e-9,
            "compose_isometry: map is not an isometry");
    if (f.is_sentinel()) return f;
    if (auto a = f.affine()) return affine(phi.Q.transpose() * a->grad, a->grad.dot(phi.b) + a->offset);
    return LipFn(std::make_shared<ComposeNode>(f, phi));
}

std::vector<LipFn> order_statistics(const std::vector<LipFn>& fns) {
    if (fns.empty()) return {};
    double L = 0;
    for (const auto& f : fns) {
        same_dim(f, fns.front());
        require(!f.is_sentinel(), "order_statistics: sentinel inputs are not allowed");
        L = std::max(L, f.lip());
    }
    if (fns.size() == 1) return fns;
    auto shared = std::make_shared<const std::vector<LipFn>>(fns);
    std::vector<LipFn> out;
    for (int j = 0; j < static_cast<int>(fns.size()); ++j)
        out.emplace_back(std::make_shared<OrderStatNode>(shared, j, L));
    return out;
}

}  // namespace regvec::lip
