#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "regvec/errors.hpp"
#include "regvec/flatten/zigzag.hpp"
#include "regvec/systems/builder.hpp"
#include "regvec/verify/oracles.hpp"
#include "scenes.hpp"

using namespace regvec;
using namespace regvec::flatten;
using namespace regvec::systems;
using namespace testing_util;

namespace {

RegularSystem zero_line() {
    const Vec e2 = v2(0, 1);
    const auto f = lip::constant(1, 0);
    return RegularSystem(2, {Slab{e2, lip::neg_inf(1), f}, Slab{e2, f, lip::pos_inf(1)}});
}

double round_trip(const ZigzagMap& h, int n, int count, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0;
    for (int i = 0; i < count; ++i) {
        const Vec q = random_vec(n, rng, scale) + Vec::Constant(n, 0.5);
        worst = std::max(worst, (h.apply_inverse(h.apply(q)) - q).norm());
    }
    return worst;
}

}  // namespace

TEST_CASE("identity system: chart isometry, trivial certificate") {
    const auto h = build_flattening(zero_line());
    CHECK(h.certificate().L_fwd == doctest::Approx(1));
    CHECK(h.certificate().L_inv == doctest::Approx(1));
    CHECK(h.certificate().alpha_reg == doctest::Approx(1));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Vec q = random_vec(2, rng, 3);
        CHECK((h.apply(q) - q).norm() < 1e-14);
        CHECK((h.apply_inverse(q) - q).norm() < 1e-14);
    }
}

TEST_CASE("V graph: one direction, rigid chart") {
    const auto A = v_graph();
    const auto S = build_system(A);
    const auto h = build_flattening(S);
    CHECK(h.runs().size() == 1);
    CHECK(h.certificate().L_fwd == doctest::Approx(1));
    CHECK(h.certificate().L_inv == doctest::Approx(1));
    CHECK(h.certificate().alpha_reg == doctest::Approx(1 / std::sqrt(2.0)));
    const auto img = flatten_set(h, A, 200);
    const auto rep = verify::check_graph_cover(h, img);
    CHECK(rep.ok());
    CHECK(rep.max_residual <= 1e-8);
}

TEST_CASE("horizontal segment under the identity system") {
    const auto A = segment(v2(-1, 0), v2(1, 0));
    const auto h = build_flattening(zero_line());
    for (const auto& s : flatten_set(h, A, 50)) CHECK((s.image - s.source).norm() < 1e-14);
}

TEST_CASE("square: points of H_1 land on F_1, round trip, transport") {
    const auto A = square_boundary();
    const auto S = build_system(A);
    const auto h = build_flattening(S);
    REQUIRE(S.count() >= 1);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 1; k <= S.count(); ++k) {
        const auto H = S.lower_surface(k);
        for (int i = 0; i < 20; ++i) {
            const Vec q = H.point(v1(u(rng)));
            const Vec p = h.apply(q);
            CHECK(std::abs(p(1) - h.floor(k, p.head(1))) < 1e-8);
        }
    }
    CHECK(round_trip(h, 2, 10000, 2, 3) <= 1e-6);

    // below H_k (as a λ_{k-1} graph) iff below F_k after h
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        Vec q(2);
        q << u(rng), u(rng);
        const Vec p = h.apply(q);
        for (int k = 1; k <= S.count(); ++k) {
            const geom::Frame F(S.direction(k - 1));
            const double d = F.height(q) - S.slab(k - 1).upper(F.shadow(q));
            const double e = p(1) - h.floor(k, p.head(1));
            if (std::abs(d) < 1e-7 || std::abs(e) < 1e-7) continue;
            if ((d < 0) != (e < 0)) ++mismatches;
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("square: image is covered by the floors with bounded slopes") {
    const auto A = square_boundary();
    const auto h = build_flattening(build_system(A));
    CHECK(h.certificate().alpha_reg > 0.05);
    const auto img = flatten_set(h, A, 2500);
    const auto rep = verify::check_graph_cover(h, img);
    CHECK(rep.ok());
    CHECK(rep.max_slope <= h.certificate().L_eta + 1e-6);
}

TEST_CASE("zigzag is increasing along fibers within a slab") {
    const auto S = build_system(square_boundary());
    const auto h = build_flattening(S);
    for (int k = 1; k < S.count(); ++k) {
        const geom::Frame F(S.direction(k));
        for (double x : {-0.5, 0.2, 0.9, 1.4}) {
            const Vec s = v1(x);
            const double lo = S.slab(k).lower(s), hi = S.slab(k).upper(s);
            if (hi - lo < 1e-6) continue;
            double prev = -kInf;
            for (int j = 1; j < 10; ++j) {
                const double y = h.apply(F.embed(s, lo + (hi - lo) * j / 10.0))(1);
                CHECK(y > prev);
                prev = y;
            }
        }
    }
}

TEST_CASE("certificates bound sampled Lipschitz ratios") {
    for (int m : {3, 5, 7, 8}) {
        const auto A = polygon(m);
        const auto h = build_flattening(build_system(A));
        const auto est = verify::estimate_bilipschitz(h, v2(-2, -2), v2(2, 2), 10000);
        CHECK(est.L_fwd <= h.certificate().L_fwd * 1.01);
        CHECK(est.L_inv <= h.certificate().L_inv * 1.01);
        CHECK(round_trip(h, 2, 2000, 2, 9) <= 1e-6);
    }
}

TEST_CASE("a simplex spread over stacked floors is still covered") {
    // the 9-gon's vertical edge crosses several H_k; its image sits on
    // floors lying above one another at the same x
    const auto A = polygon(9);
    const auto h = build_flattening(build_system(A));
    const auto rep = verify::check_graph_cover(h, flatten_set(h, A, 1200));
    CHECK(rep.ok());
    CHECK(rep.max_slope <= h.certificate().L_eta);
}

TEST_CASE("open box in R^3: round trip and graph cover") {
    const auto A = open_box();
    const auto h = build_flattening(build_system(A));
    CHECK(round_trip(h, 3, 2000, 1.5, 11) <= 1e-6);
    const auto rep = verify::check_graph_cover(h, flatten_set(h, A, 100));
    CHECK(rep.max_residual <= 1e-8);
    CHECK(rep.ok());
}

TEST_CASE("refuses a system that fails validation") {
    const Vec e2 = v2(0, 1);
    const auto f = lip::affine(v1(1), 0), g = lip::affine(v1(-1), 0);
    const RegularSystem S(2, {Slab{e2, lip::neg_inf(1), f}, Slab{e2, f, g}, Slab{e2, g, lip::pos_inf(1)}});
    CHECK_THROWS_AS(build_flattening(S), VerificationFailure);
}
