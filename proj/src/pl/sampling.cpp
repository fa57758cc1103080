#include "regvec/pl/sampling.hpp"

#include <algorithm>

namespace regvec::pl {

double halton(int index, int base) {
    double f = 1, r = 0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

std::vector<Vec> sample_simplex(const Simplex& s, int count, int offset) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    std::vector<Vec> out;
    const int d = s.dim();
    for (int i = 0; i <= d && static_cast<int>(out.size()) < count; ++i) out.push_back(s.vertices()[i]);
    std::vector<double> u(d + 2);
    for (int i = 1; static_cast<int>(out.size()) < count; ++i) {
        // sorted uniforms give uniform barycentric coordinates
        u[0] = 0;
        for (int j = 0; j < d; ++j) u[j + 1] = halton(i + offset, primes[j]);
        u[d + 1] = 1;
        std::sort(u.begin() + 1, u.begin() + d + 1);
        std::vector<double> b(d + 1);
        for (int j = 0; j <= d; ++j) b[j] = u[j + 1] - u[j];
        out.push_back(s.point(b));
    }
    return out;
}

}  // namespace regvec::pl
