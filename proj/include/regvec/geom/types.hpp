#pragma once
#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace regvec {

// Ambient dimension is small (n <= 8); keep vectors on the stack.
constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Default tolerances.
constexpr double kEpsGeom = 1e-12;  // orthonormality, membership
constexpr double kEpsEval = 1e-9;   // band width for below/above tests
constexpr double kEpsMem = 1e-8;    // point-on-surface tests in validators

inline Vec unit_vector(int n, int i) {
    Vec v = Vec::Zero(n);
    v(i) = 1.0;
    return v;
}

// e_n in R^n.
inline Vec e_last(int n) { return unit_vector(n, n - 1); }

Vec normalized_or_throw(const Vec& v);

}  // namespace regvec
