#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "regvec/flatten/zigzag.hpp"
#include "regvec/geom/direction_search.hpp"
#include "regvec/verify/oracles.hpp"
#include "scenes.hpp"

using namespace regvec;
using namespace regvec::verify;
using namespace testing_util;
using geom::Subspace;

TEST_CASE("grid argmax: known optima") {
    const auto one = grid_sphere_argmax(2, {Subspace::span({v2(1, 0)})}, 10000);
    CHECK(one.margin >= 1 - 1e-3);
    const auto two = grid_sphere_argmax(2, {Subspace::span({v2(1, 0)}), Subspace::span({v2(0, 1)})}, 10000);
    CHECK(two.margin == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(grid_sphere_argmax(3, {}, 100).margin == kInf);
    const auto planes = grid_sphere_argmax(
        3,
        {Subspace::span({v3(1, 0, 0), v3(0, 1, 0)}), Subspace::span({v3(0, 1, 0), v3(0, 0, 1)}),
         Subspace::span({v3(1, 0, 0), v3(0, 0, 1)})},
        200);
    CHECK(planes.margin == doctest::Approx(1 / std::sqrt(3.0)).epsilon(0.02));
    CHECK(planes.margin <= 1 / std::sqrt(3.0) + 1e-12);
}

TEST_CASE("grid argmax agrees with the direction search") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 2;
        std::vector<Subspace> subs;
        const int count = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < count; ++i) subs.push_back(random_subspace(n, 1 + static_cast<int>(rng() % (n - 1)), rng));
        const auto grid = grid_sphere_argmax(n, subs, n == 2 ? 2000 : 150);
        const auto fast = geom::max_min_direction(n, subs);
        CHECK(std::abs(grid.margin - fast.margin) <= 0.05);
    }
}

TEST_CASE("bi-Lipschitz estimate: identity and shear") {
    auto id = [](const Vec& q) { return q; };
    const auto e = estimate_bilipschitz(id, v2(-1, -1), v2(1, 1), 10000);
    CHECK(e.L_fwd == doctest::Approx(1).epsilon(1e-9));
    CHECK(e.L_inv == doctest::Approx(1).epsilon(1e-9));
    auto shear = [](const Vec& q) { return v2(q(0), q(1) + q(0)); };
    const auto s = estimate_bilipschitz(shear, v2(-1, -1), v2(1, 1), 20000);
    CHECK(s.L_fwd >= 1.61);
    CHECK(s.L_fwd <= (1 + std::sqrt(5.0)) / 2 + 1e-2);
    CHECK(s.pairs + s.skipped == 20000);
}

TEST_CASE("graph cover: identity system, horizontal A, and a negative control") {
    const Vec e2 = v2(0, 1);
    const auto f = lip::constant(1, 0);
    const systems::RegularSystem S(2, {systems::Slab{e2, lip::neg_inf(1), f}, systems::Slab{e2, f, lip::pos_inf(1)}});
    const auto h = flatten::build_flattening(S);
    const auto on = segment(v2(-1, 0), v2(1, 0));
    CHECK(check_graph_cover(h, flatten::flatten_set(h, on, 100)).ok());
    const auto off = segment(v2(-1, 0.5), v2(1, 0.7));
    const auto rep = check_graph_cover(h, flatten::flatten_set(h, off, 100));
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.front().simplex == 0);
    const auto steep = segment(v2(0, 0), v2(0.01, 0));
    CHECK(check_graph_cover(h, flatten::flatten_set(h, steep, 20)).ok());
}

TEST_CASE("component count") {
    auto slab = [](const Vec& q) { return q(1) > 0 && q(1) < 1; };
    CHECK(component_count(slab, v2(-2, -2), v2(2, 2), 0.05) == 1);
    auto bumps = [](const Vec& q) { return q(1) > 0 && q(1) < std::abs(q(0)) - 0.1; };
    CHECK(component_count(bumps, v2(-2, -2), v2(2, 2), 0.05) == 2);
    auto none = [](const Vec&) { return false; };
    CHECK(component_count(none, v2(-1, -1), v2(1, 1), 0.1) == 0);
    auto ball = [](const Vec& q) { return q.norm() < 0.5 || (q - v3(1, 1, 1)).norm() < 0.3; };
    CHECK(component_count(ball, v3(-1, -1, -1), v3(2, 2, 2), 0.05) == 2);
}
