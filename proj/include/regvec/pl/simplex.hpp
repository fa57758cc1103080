#pragma once
#include <vector>

#include "regvec/geom/subspace.hpp"

namespace regvec::pl {

constexpr double kBaryTol = 1e-9;

// Simplex of dimension d = vertices - 1 in R^n. Affine independence is
// checked on construction (DegenerateInput otherwise).
class Simplex {
public:
    explicit Simplex(std::vector<Vec> vertices);

    int ambient_dim() const { return static_cast<int>(vertices_.front().size()); }
    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const geom::Subspace& direction() const { return direction_; }

    Vec centroid() const;
    Vec point(const std::vector<double>& bary) const;
    // Barycentric coordinates of the orthogonal projection of q onto the
    // affine hull, and the distance from q to the hull.
    std::vector<double> barycentric(const Vec& q, double* off_hull = nullptr) const;
    bool contains(const Vec& q, double tol = kBaryTol) const;
    bool contains(const Simplex& other, double tol = kBaryTol) const;
    // Largest vertex distance from the centroid.
    double radius() const;

private:
    std::vector<Vec> vertices_;
    geom::Subspace direction_;
    Mat edges_;                    // n x d
    Eigen::MatrixXd edge_pinv_;    // d x n
};

// Finite union of simplices of dimension <= n-1.
class PLSet {
public:
    explicit PLSet(int ambient_dim) : n_(ambient_dim) {}
    PLSet(int ambient_dim, std::vector<Simplex> simplices);

    int ambient_dim() const { return n_; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    bool empty() const { return simplices_.empty(); }
    size_t size() const { return simplices_.size(); }
    void add(Simplex s);

    // Indices of simplices not contained in another simplex of the set
    // (identical duplicates: the first copy is kept).
    std::vector<int> maximal_indices() const;
    PLSet subset(const std::vector<int>& indices) const;

    // Axis-aligned bounding box.
    std::pair<Vec, Vec> bounding_box() const;

private:
    int n_;
    std::vector<Simplex> simplices_;
};

}  // namespace regvec::pl
