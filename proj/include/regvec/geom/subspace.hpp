#pragma once
#include <vector>

#include "regvec/geom/types.hpp"

namespace regvec::geom {

// Linear subspace of R^n stored as an orthonormal frame (columns of basis()).
class Subspace {
public:
    Subspace() = default;
    // Zero subspace of R^n.
    explicit Subspace(int ambient_dim);

    // Span of the given vectors. Gram-Schmidt with pivoting; directions whose
    // residual falls below tol are dropped.
    static Subspace span(const std::vector<Vec>& vectors, double tol = kEpsGeom);
    static Subspace span(std::initializer_list<Vec> vectors, double tol = kEpsGeom);

    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    bool is_proper() const { return dim() < n_; }
    const Mat& basis() const { return basis_; }

    Vec project(const Vec& v) const;

private:
    int n_ = 0;
    Mat basis_;
};

// |λ - proj_T λ|. Contract violation on dimension mismatch.
double dist_to_subspace(const Vec& lambda, const Subspace& T);

// min over a list; +inf on the empty list.
double dist_to_set(const Vec& lambda, const std::vector<Subspace>& Ts);

// Largest singular value of (I - P_Q) restricted to P. 1 when dim P > dim Q.
double angle(const Subspace& P, const Subspace& Q);

}  // namespace regvec::geom
