#pragma once
#include <memory>
#include <vector>

#include "regvec/pl/simplex.hpp"
#include "regvec/systems/regular_system.hpp"
#include "regvec/systems/validate.hpp"

namespace regvec::flatten {

struct Certificate {
    double L_fwd = 1;
    double L_inv = 1;
    double L_eta = 0;       // max over k of the Lipschitz bound of η_k
    double alpha_reg = 1;   // 1 / sqrt(1 + L_eta^2)
};

// Maximal block of consecutive slabs sharing one direction.
struct Run {
    int first = 0, last = 0;
    Vec direction;
    // Lipschitz bounds on run r: shadow chain to the base chart (P) and back
    // (R), and the height offset G_r as a function of the run's shadow (D).
    double P = 1, R = 1, D = 0;
};

struct FlattenOptions {
    bool validate = true;
    systems::ValidationOptions validation;
};

namespace detail {
struct ZigzagData;
}

// The slab-wise homeomorphism h with h(E(H_k, λ_k)) = E(F_k, e_n), F_k the
// graph of η_k for e_n. Image coordinates: shadow in the base chart of λ_0,
// last coordinate the height.
class ZigzagMap {
public:
    const systems::RegularSystem& system() const;
    const std::vector<Run>& runs() const;
    int run_of_slab(int k) const;
    // η_1..η_b, index k-1.
    const std::vector<lip::LipFn>& floor_fns() const;
    const Certificate& certificate() const;

    Vec apply(const Vec& q) const;
    Vec apply_inverse(const Vec& p) const;
    // η_k(x), 1 <= k <= b.
    double floor(int k, const Vec& x) const;

private:
    friend ZigzagMap build_flattening(const systems::RegularSystem&, const FlattenOptions&);
    std::shared_ptr<const detail::ZigzagData> d_;
    std::vector<lip::LipFn> floors_;
    Certificate cert_;
};

// VerificationFailure if the system does not validate (unless skipped).
ZigzagMap build_flattening(const systems::RegularSystem& S, const FlattenOptions& opts = {});

struct ImageSample {
    Vec source;
    Vec image;
    int simplex;
};

std::vector<ImageSample> flatten_set(const ZigzagMap& h, const pl::PLSet& A, int samples_per_simplex);

}  // namespace regvec::flatten
