#pragma once
#include <span>
#include <vector>

#include "regvec/geom/subspace.hpp"

namespace regvec::geom::kernels {

// Unit directions in structure-of-arrays layout: coord(d)[i] is the d-th
// coordinate of direction i. Rows are padded to a multiple of 4.
class DirectionBatch {
public:
    DirectionBatch(int dim, const std::vector<Vec>& dirs);
    int dim() const { return dim_; }
    int size() const { return count_; }
    int padded() const { return padded_; }
    const double* coord(int d) const { return data_.data() + static_cast<size_t>(d) * padded_; }

private:
    int dim_;
    int count_;
    int padded_;
    std::vector<double> data_;
};

enum class Path { Scalar, Avx2 };

// out[i] = min_j dist(dirs[i], subspaces[j]); +inf when the list is empty.
void min_distance_scalar(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                         std::span<double> out);
void min_distance_avx2(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                       std::span<double> out);

bool avx2_available();
// Picks the AVX2 path when the CPU supports it, unless REGVEC_SCALAR is set.
Path active_path();
void min_distance(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                  std::span<double> out);

}  // namespace regvec::geom::kernels
