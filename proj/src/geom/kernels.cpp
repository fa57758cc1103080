#include "regvec/geom/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "regvec/errors.hpp"

namespace regvec::geom::kernels {

DirectionBatch::DirectionBatch(int dim, const std::vector<Vec>& dirs)
    : dim_(dim), count_(static_cast<int>(dirs.size())), padded_((count_ + 3) / 4 * 4),
      data_(static_cast<size_t>(dim) * padded_, 0.0) {
    for (int i = 0; i < count_; ++i) {
        require(dirs[i].size() == dim, "DirectionBatch: dimension mismatch");
        for (int d = 0; d < dim; ++d) data_[static_cast<size_t>(d) * padded_ + i] = dirs[i](d);
    }
}

namespace {

// Flattened frame vectors of all subspaces: one row of n doubles per frame vector.
struct FrameTable {
    std::vector<double> rows;
    std::vector<int> begin;  // per subspace, first row; begin.back() = total
};

FrameTable flatten_frames(int n, const std::vector<Subspace>& subspaces) {
    FrameTable t;
    t.begin.push_back(0);
    for (const auto& s : subspaces) {
        require(s.ambient_dim() == n, "min_distance: dimension mismatch");
        for (int j = 0; j < s.dim(); ++j)
            for (int d = 0; d < n; ++d) t.rows.push_back(s.basis()(d, j));
        t.begin.push_back(t.begin.back() + s.dim());
    }
    return t;
}

}  // namespace

void min_distance_scalar(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                         std::span<double> out) {
    require(static_cast<int>(out.size()) >= dirs.size(), "min_distance: output too small");
    const int n = dirs.dim();
    const FrameTable t = flatten_frames(n, subspaces);
    for (int i = 0; i < dirs.size(); ++i) {
        double best = kInf;
        for (size_t s = 0; s + 1 < t.begin.size(); ++s) {
            double sq = 0;
            for (int r = t.begin[s]; r < t.begin[s + 1]; ++r) {
                double dot = 0;
                for (int d = 0; d < n; ++d) dot += t.rows[static_cast<size_t>(r) * n + d] * dirs.coord(d)[i];
                sq += dot * dot;
            }
            best = std::min(best, 1.0 - sq);
        }
        out[i] = best == kInf ? kInf : std::sqrt(std::max(0.0, best));
    }
}

__attribute__((target("avx2,fma")))
void min_distance_avx2(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                       std::span<double> out) {
    require(static_cast<int>(out.size()) >= dirs.size(), "min_distance: output too small");
    const int n = dirs.dim();
    const FrameTable t = flatten_frames(n, subspaces);
    if (subspaces.empty()) {
        std::fill(out.begin(), out.begin() + dirs.size(), kInf);
        return;
    }
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    alignas(32) double tmp[4];
    for (int i = 0; i < dirs.padded(); i += 4) {
        __m256d x[kMaxDim];
        for (int d = 0; d < n; ++d) x[d] = _mm256_loadu_pd(dirs.coord(d) + i);
        __m256d best = _mm256_set1_pd(kInf);
        for (size_t s = 0; s + 1 < t.begin.size(); ++s) {
            __m256d sq = zero;
            for (int r = t.begin[s]; r < t.begin[s + 1]; ++r) {
                const double* row = t.rows.data() + static_cast<size_t>(r) * n;
                __m256d dot = zero;
                for (int d = 0; d < n; ++d) dot = _mm256_fmadd_pd(_mm256_set1_pd(row[d]), x[d], dot);
                sq = _mm256_fmadd_pd(dot, dot, sq);
            }
            best = _mm256_min_pd(best, _mm256_sub_pd(one, sq));
        }
        best = _mm256_sqrt_pd(_mm256_max_pd(best, zero));
        _mm256_store_pd(tmp, best);
        for (int k = 0; k < 4 && i + k < dirs.size(); ++k) out[i + k] = tmp[k];
    }
}

bool avx2_available() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

Path active_path() {
    static const Path p = [] {
        if (std::getenv("REGVEC_SCALAR") != nullptr) return Path::Scalar;
        return avx2_available() ? Path::Avx2 : Path::Scalar;
    }();
    return p;
}

void min_distance(const DirectionBatch& dirs, const std::vector<Subspace>& subspaces,
                  std::span<double> out) {
    if (active_path() == Path::Avx2)
        min_distance_avx2(dirs, subspaces, out);
    else
        min_distance_scalar(dirs, subspaces, out);
}

}  // namespace regvec::geom::kernels
