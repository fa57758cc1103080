#include "regvec/geom/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "regvec/errors.hpp"

namespace regvec {

Vec normalized_or_throw(const Vec& v) {
    const double nv = v.norm();
    if (!(nv > kEpsGeom)) throw DegenerateInput("cannot normalize a zero vector");
    return v / nv;
}

}  // namespace regvec

namespace regvec::geom {

Subspace::Subspace(int ambient_dim) : n_(ambient_dim), basis_(ambient_dim, 0) {}

Subspace Subspace::span(const std::vector<Vec>& vectors, double tol) {
    if (vectors.empty()) throw ContractViolation("Subspace::span needs at least one vector to fix the dimension");
    const int n = static_cast<int>(vectors.front().size());
    for (const auto& v : vectors)
        require(v.size() == n, "Subspace::span: dimension mismatch");

    std::vector<Vec> rest(vectors.begin(), vectors.end());
    std::vector<Vec> frame;
    while (!rest.empty() && static_cast<int>(frame.size()) < n) {
        // pivot: largest residual first
        size_t best = 0;
        double best_norm = -1;
        for (size_t i = 0; i < rest.size(); ++i) {
            const double r = rest[i].norm();
            if (r > best_norm) { best_norm = r; best = i; }
        }
        if (best_norm < tol) break;
        Vec u = rest[best] / best_norm;
        // second pass against the frame for stability
        for (const auto& f : frame) u -= f.dot(u) * f;
        u.normalize();
        frame.push_back(u);
        rest.erase(rest.begin() + static_cast<long>(best));
        for (auto& r : rest) r -= u.dot(r) * u;
    }
    Subspace s(n);
    s.basis_.resize(n, static_cast<long>(frame.size()));
    for (size_t j = 0; j < frame.size(); ++j) s.basis_.col(static_cast<long>(j)) = frame[j];
    return s;
}

Subspace Subspace::span(std::initializer_list<Vec> vectors, double tol) {
    return span(std::vector<Vec>(vectors), tol);
}

Vec Subspace::project(const Vec& v) const {
    require(v.size() == n_, "Subspace::project: dimension mismatch");
    if (dim() == 0) return Vec::Zero(n_);
    return basis_ * (basis_.transpose() * v);
}

double dist_to_subspace(const Vec& lambda, const Subspace& T) {
    require(lambda.size() == T.ambient_dim(), "dist_to_subspace: dimension mismatch");
    const double d = (lambda - T.project(lambda)).norm();
    return std::clamp(d, 0.0, 1.0);
}

double dist_to_set(const Vec& lambda, const std::vector<Subspace>& Ts) {
    double m = kInf;
    for (const auto& T : Ts) m = std::min(m, dist_to_subspace(lambda, T));
    return m;
}

double angle(const Subspace& P, const Subspace& Q) {
    require(P.ambient_dim() == Q.ambient_dim(), "angle: dimension mismatch");
    if (P.dim() > Q.dim()) return 1.0;
    if (P.dim() == 0) return 0.0;
    Mat R = P.basis();
    if (Q.dim() > 0) R -= Q.basis() * (Q.basis().transpose() * P.basis());
    Eigen::JacobiSVD<Mat> svd(R);
    return std::clamp(svd.singularValues()(0), 0.0, 1.0);
}

}  // namespace regvec::geom
