#pragma once
#include "regvec/geom/types.hpp"

namespace regvec::geom {

// Orthonormal coordinates (shadow, height) adapted to a unit vector λ.
// Uses the Householder reflection H that swaps e_n and λ, so coords(q) = Hq:
// the first n-1 entries are the shadow in N_λ, the last is <q, λ>.
class Frame {
public:
    Frame() = default;
    explicit Frame(const Vec& lambda);

    int ambient_dim() const { return static_cast<int>(lambda_.size()); }
    const Vec& direction() const { return lambda_; }

    Vec shadow(const Vec& q) const;   // length n-1
    double height(const Vec& q) const { return lambda_.dot(q); }
    // embed(s) + h λ
    Vec embed(const Vec& shadow, double height = 0.0) const;
    // i-th frame vector of N_λ (i < n-1), as a vector of R^n.
    Vec axis(int i) const;

private:
    Vec reflect(const Vec& x) const;

    Vec lambda_;
    Vec v_;          // Householder vector e_n - λ
    double beta_ = 0;  // 2 / |v|^2, or 0 for the identity
};

struct Projection {
    Vec shadow;
    double height;
};

Projection project_along(const Vec& lambda, const Vec& q);

// π_e(u)/|π_e(u)| as a vector of R^n. DegenerateInput when u is near ±e.
Vec tilde_pi(const Vec& e, const Vec& u);

}  // namespace regvec::geom
