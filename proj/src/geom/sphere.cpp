#include "regvec/geom/sphere.hpp"

#include <cmath>
#include <functional>

#include "regvec/errors.hpp"

namespace regvec::geom {

namespace {

// Number of integer points with sum |x_i| = N in Z^n.
double l1_sphere_count(int n, int N) {
    // sum_k 2^k C(n,k) C(N-1,k-1)
    double total = 0;
    for (int k = 1; k <= std::min(n, N); ++k) {
        double a = std::pow(2.0, k);
        for (int i = 0; i < k; ++i) a *= static_cast<double>(n - i) / (i + 1);
        double b = 1;
        for (int i = 0; i < k - 1; ++i) b *= static_cast<double>(N - 1 - i) / (i + 1);
        total += a * b;
    }
    return total;
}

constexpr double kMaxCoverPoints = 2.5e5;

}  // namespace

SphereCover sphere_cover(int n, double t) {
    if (!(t > 0)) throw ContractViolation("sphere_cover: t must be positive");
    require(t <= 2.0, "sphere_cover: t must be at most 2");
    require(n >= 1 && n <= kMaxDim, "sphere_cover: unsupported dimension");
    SphereCover cover;
    cover.radius = t;
    if (n == 1) {
        cover.points = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
        return cover;
    }
    // Rounding a point of the L1 sphere to the 1/N lattice moves it by at most
    // n/(2N) before normalization and n/N after, so N >= 2n/t suffices.
    int N = 1;
    while (N < 2.0 * n / t) {
        if (l1_sphere_count(n, 2 * N) > kMaxCoverPoints) {
            cover.radius = 2.0 * n / N;  // best we can afford
            break;
        }
        N *= 2;
    }

    std::vector<int> x(n);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            for (int s : {1, -1}) {
                if (left == 0 && s < 0) continue;
                x[i] = s * left;
                Vec p(n);
                for (int j = 0; j < n; ++j) p(j) = x[j];
                cover.points.push_back(p.normalized());
            }
            return;
        }
        for (int a = 0; a <= left; ++a) {
            for (int s : {1, -1}) {
                if (a == 0 && s < 0) continue;
                x[i] = s * a;
                rec(i + 1, left - a);
            }
        }
    };
    rec(0, N);
    return cover;
}

Vec random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = g(rng);
        const double nv = v.norm();
        if (nv > 1e-6) return v / nv;
    }
}

int count_cover_misses(const SphereCover& cover, int n, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int misses = 0;
    const double r = cover.radius / 2.0;
    for (int s = 0; s < samples; ++s) {
        const Vec u = random_unit(n, rng);
        bool hit = false;
        for (const auto& p : cover.points) {
            if ((u - p).norm() <= r) { hit = true; break; }
        }
        if (!hit) ++misses;
    }
    return misses;
}

}  // namespace regvec::geom
