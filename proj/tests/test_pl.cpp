#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "regvec/errors.hpp"
#include "regvec/geom/frame.hpp"
#include "regvec/pl/tangent.hpp"
#include "scenes.hpp"

using namespace regvec;
using namespace regvec::pl;
using namespace testing_util;

namespace {

std::vector<double> random_bary(int k, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> b(k);
    double s = 0;
    for (auto& x : b) { x = e(rng); s += x; }
    for (auto& x : b) x /= s;
    return b;
}

PLSet random_set(int n, int m, std::mt19937_64& rng) {
    PLSet A(n);
    while (static_cast<int>(A.size()) < m) {
        const int d = 1 + static_cast<int>(rng() % (n - 1));
        std::vector<Vec> vs;
        for (int i = 0; i <= d; ++i) vs.push_back(random_vec(n, rng, 2));
        try { A.add(Simplex(vs)); } catch (const DegenerateInput&) {}
    }
    return A;
}

}  // namespace

TEST_CASE("simplex validation and the empty-interior gate") {
    CHECK_THROWS_AS(Simplex({p2(0, 0), p2(1, 1), p2(2, 2)}), DegenerateInput);
    PLSet A(2);
    CHECK_THROWS_AS(A.add(Simplex({p2(0, 0), p2(1, 0), p2(0, 1)})), ContractViolation);
    const Simplex s({p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0)});
    CHECK(s.dim() == 2);
    CHECK(s.direction().dim() == 2);
    CHECK(s.contains(p3(0.2, 0.2, 0)));
    CHECK_FALSE(s.contains(p3(0.2, 0.2, 0.1)));
    CHECK_FALSE(s.contains(p3(0.7, 0.7, 0)));
}

TEST_CASE("tangent_set examples") {
    auto T = tangent_set(segment(p2(0, 0), p2(1, 0)));
    REQUIRE(T.size() == 1);
    CHECK(geom::angle(T[0], geom::Subspace::span({p2(1, 0)})) < 1e-12);
    CHECK(tangent_set(square_boundary()).size() == 2);
    T = tangent_set(v_graph());
    REQUIRE(T.size() == 2);
    CHECK(geom::angle(T[0], geom::Subspace::span({p2(1, -1)})) < 1e-12);
    CHECK(geom::angle(T[1], geom::Subspace::span({p2(1, 1)})) < 1e-12);
}

TEST_CASE("maximal simplices") {
    PLSet A(2);
    A.add(Simplex({p2(0, 0), p2(2, 0)}));
    A.add(Simplex({p2(0.5, 0), p2(1, 0)}));
    A.add(Simplex({p2(0, 0), p2(2, 0)}));
    A.add(Simplex({p2(1, 0)}));
    A.add(Simplex({p2(5, 5)}));
    CHECK(A.maximal_indices() == std::vector<int>{0, 4});
    // the isolated point contributes the zero subspace
    CHECK(tangent_set(A).size() == 2);
}

TEST_CASE("regularity_margin examples") {
    CHECK(regularity_margin(p2(0, 1), v_graph()) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(regularity_margin(p2(1, 0), segment(p2(0, 0), p2(1, 0))) == doctest::Approx(0.0));
    CHECK(regularity_margin(p2(0.6, 0.8), PLSet(2)) == kInf);
}

TEST_CASE("regularity margin is monotone under inclusion") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 200; ++it) {
        const int n = 2 + it % 2;
        const PLSet A = random_set(n, 2 + it % 5, rng);
        std::vector<int> sub;
        for (int i = 0; i < static_cast<int>(A.size()); ++i)
            if (rng() % 2) sub.push_back(i);
        const PLSet B = A.subset(sub);
        const Vec l = geom::random_unit(n, rng);
        CHECK(regularity_margin(l, B) >= regularity_margin(l, A) - 1e-15);
    }
}

TEST_CASE("flat_partition") {
    CHECK(flat_partition(square_boundary(), 0.1).size() == 2);
    CHECK(flat_partition(square_boundary(), 1.0).size() == 1);
    CHECK(flat_partition(segment(p2(0, 0), p2(1, 0)), 0.1).size() == 1);
    CHECK_THROWS_AS(flat_partition(square_boundary(), 0.0), ContractViolation);

    std::mt19937_64 rng(22);
    for (int it = 0; it < 100; ++it) {
        const int n = 2 + it % 2;
        const PLSet A = random_set(n, 3 + it % 6, rng);
        const double alpha = 0.05 + 0.9 * (it % 10) / 10.0;
        const auto groups = flat_partition_indices(A, alpha);
        std::vector<int> all;
        for (const auto& g : groups) {
            for (int i : g)
                for (int j : g)
                    CHECK(geom::angle(A.simplices()[i].direction(), A.simplices()[j].direction()) <= alpha + 1e-12);
            all.insert(all.end(), g.begin(), g.end());
        }
        std::sort(all.begin(), all.end());
        std::vector<int> expect(A.size());
        for (size_t i = 0; i < expect.size(); ++i) expect[i] = static_cast<int>(i);
        CHECK(all == expect);
    }
}

TEST_CASE("graph_decompose examples") {
    auto pieces = graph_decompose(segment(p2(-1, 1), p2(1, 1)), p2(0, 1), 1.0);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].slope == doctest::Approx(0.0));
    CHECK(pieces[0].lip_cert == 0.0);
    pieces = graph_decompose(v_graph(), p2(0, 1), 1 / std::sqrt(2.0) - 1e-12);
    REQUIRE(pieces.size() == 2);
    for (const auto& p : pieces) {
        CHECK(p.slope == doctest::Approx(1.0));
        CHECK(p.lip_cert == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(graph_decompose(square_boundary(), p2(0, 1), 0.1), ContractViolation);
}

TEST_CASE("graph_decompose: slopes and pointwise reproduction") {
    std::mt19937_64 rng(23);
    int done = 0;
    for (int it = 0; it < 300 && done < 60; ++it) {
        const int n = 2 + it % 2;
        const PLSet A = random_set(n, 1 + it % 4, rng);
        const Vec l = geom::random_unit(n, rng);
        const double alpha = regularity_margin(l, A);
        if (alpha < 0.05) continue;
        ++done;
        const auto pieces = graph_decompose(A, l, alpha);
        const geom::Frame F(l);
        for (const auto& p : pieces) {
            CHECK(p.slope <= slope_bound(alpha) + 1e-9);
            const Simplex& s = A.simplices()[p.simplex];
            for (int k = 0; k < 50; ++k) {
                const auto b = random_bary(s.dim() + 1, rng);
                const Vec q = s.point(b);
                CHECK(std::abs(p.height(F.shadow(q)) - F.height(q)) < 1e-9);
                // converse: lift a shadow point
                Vec sh = Vec::Zero(n - 1);
                for (size_t i = 0; i < b.size(); ++i) sh += b[i] * p.shadow[i];
                CHECK(s.contains(F.embed(sh, p.height(sh))));
            }
        }
    }
    CHECK(done >= 30);
}
