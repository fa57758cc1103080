#pragma once
#include <vector>

#include "regvec/pl/simplex.hpp"

namespace regvec::pl {

double halton(int index, int base);

// Deterministic low-discrepancy points of σ: the vertices first, then
// Halton points mapped to barycentric coordinates. `offset` shifts the
// Halton sequence.
std::vector<Vec> sample_simplex(const Simplex& s, int count, int offset = 0);

}  // namespace regvec::pl
