#include "regvec/geom/frame.hpp"

#include <cmath>

#include "regvec/errors.hpp"

namespace regvec::geom {

Frame::Frame(const Vec& lambda) : lambda_(lambda) {
    const int n = static_cast<int>(lambda.size());
    require(n >= 1, "Frame: empty direction");
    require(std::abs(lambda.norm() - 1.0) <= 1e-9, "Frame: direction must be a unit vector");
    v_ = e_last(n) - lambda;
    const double vv = v_.squaredNorm();
    beta_ = vv > 1e-24 ? 2.0 / vv : 0.0;
}

Vec Frame::reflect(const Vec& x) const {
    if (beta_ == 0.0) return x;
    return x - (beta_ * v_.dot(x)) * v_;
}

Vec Frame::shadow(const Vec& q) const {
    require(q.size() == lambda_.size(), "Frame::shadow: dimension mismatch");
    const Vec h = reflect(q);
    return h.head(h.size() - 1);
}

Vec Frame::embed(const Vec& shadow, double height) const {
    const int n = ambient_dim();
    require(shadow.size() == n - 1, "Frame::embed: dimension mismatch");
    Vec x(n);
    x.head(n - 1) = shadow;
    x(n - 1) = 0.0;
    return reflect(x) + height * lambda_;
}

Vec Frame::axis(int i) const {
    const int n = ambient_dim();
    require(i >= 0 && i < n - 1, "Frame::axis: index out of range");
    return reflect(unit_vector(n, i));
}

Projection project_along(const Vec& lambda, const Vec& q) {
    Frame f(lambda);
    return {f.shadow(q), f.height(q)};
}

Vec tilde_pi(const Vec& e, const Vec& u) {
    require(e.size() == u.size(), "tilde_pi: dimension mismatch");
    const Vec p = u - e.dot(u) * e;
    const double np = p.norm();
    if (np <= kEpsGeom) throw DegenerateInput("tilde_pi: u is parallel to e");
    return p / np;
}

}  // namespace regvec::geom
