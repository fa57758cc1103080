#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "regvec/pl/simplex.hpp"
#include "regvec/systems/regular_system.hpp"

namespace regvec::systems {

struct ValidationOptions {
    int samples = 10000;
    std::uint64_t seed = 20240611;
    double eps_eval = kEpsEval;
    double eps_mem = kEpsMem;
    int min_per_item = 64;
};

struct ValidationReport {
    // index k of slab (1..b-1): sampled min of upper - lower, violations (< -2 eps)
    std::vector<double> min_gap;
    std::vector<int> monotonicity;
    // index k of surface H_k (1..b): below-region mismatches between λ_{k-1} and λ_k
    std::vector<int> agreement;
    // per simplex of A: samples farther than eps_mem from every H_k
    std::vector<int> compatibility;
    std::vector<int> compatibility_samples;
    int monotonicity_total = 0;
    int agreement_total = 0;
    int compatibility_total = 0;
    int samples_used = 0;
    std::vector<std::string> notes;
    bool ok() const { return monotonicity_total == 0 && agreement_total == 0 && compatibility_total == 0; }
};

ValidationReport validate(const RegularSystem& S, const pl::PLSet* A = nullptr, const ValidationOptions& opts = {});

// Sampling box: bbox of A grown by half its size (plus 0.5), or [-2,2]^n.
std::pair<Vec, Vec> sampling_box(int n, const pl::PLSet* A);

}  // namespace regvec::systems
