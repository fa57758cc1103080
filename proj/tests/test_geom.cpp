#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "regvec/errors.hpp"
#include "regvec/geom/direction_search.hpp"
#include "regvec/geom/frame.hpp"
#include "regvec/geom/kernels.hpp"
#include "regvec/geom/sphere.hpp"

using namespace regvec;
using namespace regvec::geom;
using namespace testing_util;

TEST_CASE("dist_to_subspace examples") {
    const auto X = Subspace::span({v2(1, 0)});
    CHECK(dist_to_subspace(v2(0, 1), X) == doctest::Approx(1.0));
    CHECK(dist_to_subspace(v2(1, 0), X) == doctest::Approx(0.0));
    CHECK(dist_to_subspace(v2(1, 1) / std::sqrt(2.0), X) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK_THROWS_AS(dist_to_subspace(v3(0, 0, 1), X), ContractViolation);
    CHECK(dist_to_set(v2(0, 1), {}) == kInf);
}

TEST_CASE("dist_to_subspace: Pythagoras and sign symmetry") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 1000; ++it) {
        const int n = 2 + it % 4;
        const auto T = random_subspace(n, 1 + it % (n - 1), rng);
        const Vec l = random_unit(n, rng);
        const double d = dist_to_subspace(l, T);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(std::abs(d * d + T.project(l).squaredNorm() - 1.0) < 1e-9);
        CHECK(std::abs(d - dist_to_subspace(-l, T)) < 1e-15);
    }
}

TEST_CASE("Gram-Schmidt drops dependent vectors") {
    const auto S = Subspace::span({v3(1, 0, 0), v3(2, 0, 0), v3(1, 1e-14, 0), v3(0, 1, 0)});
    CHECK(S.dim() == 2);
    const Mat G = S.basis().transpose() * S.basis();
    CHECK((G - Mat::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("angle examples") {
    const auto P = Subspace::span({v3(1, 0, 0), v3(0, 1, 0)});
    const auto Q = Subspace::span({v3(1, 0, 0)});
    CHECK(angle(P, P) == doctest::Approx(0.0));
    CHECK(angle(P, Q) == 1.0);
    const auto a = Subspace::span({v2(1, 0)}), b = Subspace::span({v2(1, 1)});
    CHECK(angle(a, b) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    // dense sampling of unit vectors of P as oracle
    double sup = 0;
    const auto P2 = Subspace::span({v3(1, 0, 0), v3(0, 1, 0)});
    const auto Q2 = Subspace::span({v3(1, 0, 1), v3(0, 1, 0)});
    for (int i = 0; i < 20000; ++i) {
        const double t = 2 * std::numbers::pi * i / 20000;
        sup = std::max(sup, dist_to_subspace(v3(std::cos(t), std::sin(t), 0), Q2));
    }
    CHECK(std::abs(angle(P2, Q2) - sup) < 1e-6);
}

TEST_CASE("angle is a metric on each fixed dimension") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 1000; ++it) {
        const int n = 3 + it % 2;
        const int k = 1 + it % (n - 1);
        const auto A = random_subspace(n, k, rng), B = random_subspace(n, k, rng), C = random_subspace(n, k, rng);
        CHECK(std::abs(angle(A, B) - angle(B, A)) < 1e-9);
        CHECK(angle(A, C) <= angle(A, B) + angle(B, C) + 1e-9);
    }
}

TEST_CASE("project_along examples and reconstruction") {
    auto p = project_along(v2(0, 1), v2(3, 5));
    CHECK(p.shadow(0) == doctest::Approx(3.0));
    CHECK(p.height == doctest::Approx(5.0));
    p = project_along(v2(1, 0), v2(1, 0));
    CHECK(std::abs(p.shadow(0)) < 1e-15);
    CHECK(p.height == doctest::Approx(1.0));
    const Vec l = v2(1, 1) / std::sqrt(2.0);
    p = project_along(l, v2(1, 0));
    CHECK(p.height == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(p.shadow.norm() == doctest::Approx(1 / std::sqrt(2.0)));

    std::mt19937_64 rng(13);
    for (int it = 0; it < 500; ++it) {
        const int n = 1 + it % 5;
        const Vec lam = random_unit(n, rng);
        const Vec q = random_vec(n, rng, 10);
        const Frame F(lam);
        const Vec back = F.embed(F.shadow(q), F.height(q));
        CHECK((back - q).norm() < 1e-12 * (1 + q.norm()));
        // frame is orthonormal and orthogonal to λ
        for (int i = 0; i + 1 < n; ++i) {
            CHECK(std::abs(F.axis(i).dot(lam)) < 1e-12);
            CHECK(std::abs(F.axis(i).norm() - 1) < 1e-12);
        }
        // pure function of λ
        CHECK(Frame(lam).shadow(q) == F.shadow(q));
    }
}

TEST_CASE("tilde_pi") {
    CHECK((tilde_pi(v3(0, 0, 1), v3(1, 0, 0)) - v3(1, 0, 0)).norm() < 1e-15);
    CHECK((tilde_pi(v3(0, 0, 1), v3(1, 0, 1) / std::sqrt(2.0)) - v3(1, 0, 0)).norm() < 1e-15);
    CHECK_THROWS_AS(tilde_pi(v3(0, 0, 1), v3(0, 0, 1)), DegenerateInput);
}

TEST_CASE("sphere_cover") {
    auto c1 = sphere_cover(1, 0.3);
    REQUIRE(c1.points.size() == 2);
    CHECK(c1.points[0](0) == 1.0);
    CHECK(c1.points[1](0) == -1.0);

    auto c2 = sphere_cover(2, 2.0);
    CHECK(c2.points.size() <= 8);
    std::vector<double> ang;
    for (const auto& p : c2.points) ang.push_back(std::atan2(p(1), p(0)));
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2 * std::numbers::pi - ang.back();
    for (size_t i = 1; i < ang.size(); ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
    CHECK(gap <= 2 * std::asin(2.0 / 4) + 1e-12);

    auto c3 = sphere_cover(3, 0.5);
    CHECK(count_cover_misses(c3, 3, 100000, 5) == 0);
    CHECK_THROWS_AS(sphere_cover(2, 0.0), ContractViolation);
    for (const auto& p : c3.points) CHECK(std::abs(p.norm() - 1) < 1e-12);
}

TEST_CASE("max_min_direction examples") {
    auto r = max_min_direction(2, {Subspace::span({v2(1, 0)})});
    CHECK(r.margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(std::abs(r.lambda(1)) - 1) < 1e-6);

    r = max_min_direction(2, {Subspace::span({v2(1, 0)}), Subspace::span({v2(0, 1)})});
    CHECK(r.margin == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(std::abs(std::abs(r.lambda(0)) - 1 / std::sqrt(2.0)) < 1e-4);

    r = max_min_direction(3, {});
    CHECK(r.margin == kInf);
    CHECK((r.lambda - v3(0, 0, 1)).norm() == 0.0);

    CHECK_THROWS_AS(max_min_direction(2, {Subspace::span({v2(1, 0), v2(0, 1)})}), ContractViolation);
}

TEST_CASE("cover points certify the finitely-many-directions bound") {
    std::mt19937_64 rng(14);
    const double t = 0.4;
    for (int n : {2, 3}) {
        const auto cover = sphere_cover(n, t);
        for (int it = 0; it < 30; ++it) {
            std::vector<Subspace> P;
            const int nu = 1 + it % 5;
            for (int i = 0; i < nu; ++i) P.push_back(random_subspace(n, 1 + (i % (n - 1)), rng));
            const double opt = max_min_direction(n, P).margin;
            double best = 0;
            for (const auto& l : cover.points) best = std::max(best, dist_to_set(l, P));
            CHECK(best >= opt - t);
        }
    }
}

TEST_CASE("exclusions are honoured") {
    MaxMinOptions o;
    o.exclusions.push_back({v2(0, 1), 0.5});
    const auto r = max_min_direction(2, {Subspace::span({v2(1, 0)})}, o);
    CHECK((r.lambda - v2(0, 1)).norm() >= 0.5);
    CHECK((r.lambda + v2(0, 1)).norm() >= 0.5);
}

TEST_CASE("fiber_direction_search examples") {
    const Vec mu = v3(0, 0, 1), l = v3(1, 0, 0);
    auto r = fiber_direction_search(mu, l, 0.5, {});
    CHECK(r.margin == kInf);
    CHECK(r.lambda == l);

    r = fiber_direction_search(mu, l, 1.0, {Subspace::span({v3(1, 0, 0)})});
    CHECK(r.margin > 0.3);
    CHECK((r.lambda - l).norm() < 1.0);
    CHECK(std::abs(r.lambda(1)) < 1e-12);
    // dense scan oracle
    double best = 0;
    for (int i = 0; i < 100000; ++i) {
        const double phi = -std::numbers::pi / 2 + std::numbers::pi * i / 100000;
        const Vec x = v3(std::cos(phi), 0, std::sin(phi));
        if ((x - l).norm() < 1.0) best = std::max(best, std::abs(std::sin(phi)));
    }
    CHECK(r.margin >= best - 1e-6);

    CHECK_THROWS_AS(fiber_direction_search(mu, l, 1e-15, {}), DegenerateInput);
}

TEST_CASE("fiber tangent bound") {
    std::mt19937_64 rng(15);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        const int n = 2 + it % 3;
        const Vec mu = random_unit(n, rng);
        const int k = 1 + it % (n - 1);
        const auto T = random_subspace(n, k, rng);
        // x ∈ T ∩ S^{n-1}
        Vec x = T.basis() * random_vec(k, rng);
        if (x.norm() < 1e-3) continue;
        x.normalize();
        if (std::min((x - mu).norm(), (x + mu).norm()) < 1e-6) continue;
        const Vec v = fiber_tangent(mu, x);
        CHECK(dist_to_subspace(mu, T) <= dist_to_subspace(v, T) + 1e-9);
        ++checked;
    }
    CHECK(checked > 900);
}

TEST_CASE("SIMD kernel agrees with the scalar reference") {
    std::mt19937_64 rng(16);
    for (int it = 0; it < 200; ++it) {
        const int n = 2 + it % 6;
        std::vector<Vec> dirs;
        const int m = 1 + static_cast<int>(rng() % 37);
        for (int i = 0; i < m; ++i) dirs.push_back(random_unit(n, rng));
        std::vector<Subspace> P;
        for (int i = 0; i < static_cast<int>(it % 5); ++i) P.push_back(random_subspace(n, 1 + i % (n - 1), rng));
        kernels::DirectionBatch b(n, dirs);
        std::vector<double> s(m), v(m), x(m);
        kernels::min_distance_scalar(b, P, s);
        kernels::min_distance(b, P, x);
        if (kernels::avx2_available()) kernels::min_distance_avx2(b, P, v);
        else v = s;
        for (int i = 0; i < m; ++i) {
            if (P.empty()) {
                CHECK(s[i] == kInf);
                CHECK(v[i] == kInf);
                continue;
            }
            CHECK(std::abs(s[i] - v[i]) < 1e-7);
            CHECK(std::abs(s[i] - x[i]) < 1e-7);
            // squared values agree to rounding
            CHECK(std::abs(s[i] * s[i] - v[i] * v[i]) < 1e-14);
            CHECK(std::abs(s[i] - dist_to_set(dirs[i], P)) < 1e-7);
        }
    }
}
