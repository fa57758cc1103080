#include "regvec/pl/simplex.hpp"

#include <algorithm>
#include <string>

#include "regvec/errors.hpp"

namespace regvec::pl {

Simplex::Simplex(std::vector<Vec> vertices) : vertices_(std::move(vertices)) {
    require(!vertices_.empty(), "Simplex: no vertices");
    const int n = static_cast<int>(vertices_.front().size());
    require(n >= 1 && n <= kMaxDim, "Simplex: unsupported ambient dimension");
    for (const auto& v : vertices_) {
        require(v.size() == n, "Simplex: vertices of mixed dimension");
        require(v.allFinite(), "Simplex: non-finite coordinate");
    }
    const int d = static_cast<int>(vertices_.size()) - 1;
    if (d > n) throw DegenerateInput("Simplex: more than n+1 vertices");
    edges_.resize(n, d);
    std::vector<Vec> cols;
    for (int j = 0; j < d; ++j) {
        edges_.col(j) = vertices_[j + 1] - vertices_[0];
        cols.push_back(edges_.col(j) / std::max(edges_.col(j).norm(), 1e-300));
    }
    if (d > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(edges_), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (!(sv(d - 1) > kEpsGeom)) throw DegenerateInput("Simplex: affinely dependent vertices");
        edge_pinv_ = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
        direction_ = geom::Subspace::span(cols);
    } else {
        edge_pinv_.resize(0, n);
        direction_ = geom::Subspace(n);
    }
}

Vec Simplex::centroid() const {
    Vec c = Vec::Zero(ambient_dim());
    for (const auto& v : vertices_) c += v;
    return c / static_cast<double>(vertices_.size());
}

Vec Simplex::point(const std::vector<double>& bary) const {
    require(bary.size() == vertices_.size(), "Simplex::point: wrong number of coordinates");
    Vec p = Vec::Zero(ambient_dim());
    for (size_t i = 0; i < vertices_.size(); ++i) p += bary[i] * vertices_[i];
    return p;
}

std::vector<double> Simplex::barycentric(const Vec& q, double* off_hull) const {
    require(q.size() == ambient_dim(), "Simplex::barycentric: dimension mismatch");
    const int d = dim();
    std::vector<double> b(d + 1);
    const Eigen::VectorXd rel = q - vertices_[0];
    Eigen::VectorXd t = edge_pinv_ * rel;
    double s = 0;
    for (int j = 0; j < d; ++j) { b[j + 1] = t(j); s += t(j); }
    b[0] = 1.0 - s;
    if (off_hull) {
        Eigen::VectorXd res = rel;
        if (d > 0) res -= Eigen::MatrixXd(edges_) * t;
        *off_hull = res.norm();
    }
    return b;
}

double Simplex::radius() const {
    const Vec c = centroid();
    double r = 0;
    for (const auto& v : vertices_) r = std::max(r, (v - c).norm());
    return r;
}

bool Simplex::contains(const Vec& q, double tol) const {
    double off = 0;
    const auto b = barycentric(q, &off);
    if (off > tol * std::max(1.0, radius())) return false;
    return std::all_of(b.begin(), b.end(), [&](double x) { return x >= -tol; });
}

bool Simplex::contains(const Simplex& other, double tol) const {
    return std::all_of(other.vertices().begin(), other.vertices().end(),
                       [&](const Vec& v) { return contains(v, tol); });
}

PLSet::PLSet(int ambient_dim, std::vector<Simplex> simplices) : n_(ambient_dim) {
    for (auto& s : simplices) add(std::move(s));
}

void PLSet::add(Simplex s) {
    require(s.ambient_dim() == n_, "PLSet: simplex of wrong ambient dimension");
    if (s.dim() > n_ - 1)
        throw ContractViolation("empty-interior violation: simplex " + std::to_string(simplices_.size()) +
                                " has dimension " + std::to_string(s.dim()) + " in R^" + std::to_string(n_));
    simplices_.push_back(std::move(s));
}

std::vector<int> PLSet::maximal_indices() const {
    std::vector<int> out;
    const int m = static_cast<int>(simplices_.size());
    for (int i = 0; i < m; ++i) {
        bool covered = false;
        for (int j = 0; j < m && !covered; ++j) {
            if (i == j || simplices_[j].dim() < simplices_[i].dim()) continue;
            if (!simplices_[j].contains(simplices_[i])) continue;
            // mutual containment (duplicates): keep the lower index
            const bool mutual = simplices_[j].dim() == simplices_[i].dim() && simplices_[i].contains(simplices_[j]);
            covered = !mutual || j < i;
        }
        if (!covered) out.push_back(i);
    }
    return out;
}

PLSet PLSet::subset(const std::vector<int>& indices) const {
    PLSet out(n_);
    for (int i : indices) out.add(simplices_.at(static_cast<size_t>(i)));
    return out;
}

std::pair<Vec, Vec> PLSet::bounding_box() const {
    Vec lo = Vec::Constant(n_, kInf), hi = Vec::Constant(n_, -kInf);
    for (const auto& s : simplices_)
        for (const auto& v : s.vertices()) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    return {lo, hi};
}

}  // namespace regvec::pl
