#include <catch2/catch_amalgamated.hpp>

#include "rmkit/functor.hpp"
#include "support.hpp"

using namespace rmkit;
using rmtest::rand_long;

TEST_CASE("cm_trace_norm computes the case forms") {
    auto a = cm_trace_norm(5, 1, -1, 2);
    CHECK(a.cm_case == CmCase::case1);
    CHECK(a.trace == Rat(0));
    CHECK(a.norm == Rat(5));
    CHECK(a.trace_integral);
    CHECK(a.norm_integral);

    auto b = cm_trace_norm(2, 1, 0, 1);
    CHECK(b.cm_case == CmCase::case2);
    CHECK(b.trace == Rat(0));
    CHECK(b.norm == Rat(2));
    CHECK(b.norm_integral);

    auto c = cm_trace_norm(5, 1, 0, 1);
    CHECK(c.trace == Rat(1));
    CHECK(c.norm == Rat(3, 2));
    CHECK(c.trace_integral);
    CHECK_FALSE(c.norm_integral);
}

TEST_CASE("minimal_norm_search finds the stated minimizers") {
    auto s51 = minimal_norm_search(5, 1, 10);
    REQUIRE(s51.found);
    CHECK(s51.min_norm == 5);
    CHECK(s51.witnesses ==
          std::vector<std::pair<Int, Int>>{{-1, 2}, {1, -2}});

    auto s21 = minimal_norm_search(2, 1, 10);
    REQUIRE(s21.found);
    CHECK(s21.min_norm == 2);
    CHECK(s21.witnesses ==
          std::vector<std::pair<Int, Int>>{{0, -1}, {0, 1}});

    auto s32 = minimal_norm_search(3, 2, 10);
    REQUIRE(s32.found);
    CHECK(s32.min_norm == 12);
    CHECK(s32.witnesses ==
          std::vector<std::pair<Int, Int>>{{0, -1}, {0, 1}});

    CHECK_THROWS_AS(minimal_norm_search(5, 4, 8), BoundExceededError);
}

TEST_CASE("minimal_norm_search matches brute minimum on the grid") {
    for (long D : squarefree_radicands_upto(30)) {
        for (long f = 1; f <= 3; ++f) {
            auto s = minimal_norm_search(D, f, default_search_bound(f));
            REQUIRE(s.found);
            // Every witness really attains the minimum with integral data.
            for (const auto& [m, n] : s.witnesses) {
                auto el = cm_trace_norm(D, f, m, n);
                CHECK(el.trace_integral);
                CHECK(el.norm_integral);
                CHECK(el.norm == Rat(s.min_norm));
                CHECK(n != 0);
            }
        }
    }
}

TEST_CASE("endo_matrix builds (trace, -1; norm, 0)") {
    CHECK(endo_matrix(Rat(0), Rat(5)) == Matrix2Z{0, -1, 5, 0});
    CHECK(endo_matrix(Rat(0), Rat(2)) == Matrix2Z{0, -1, 2, 0});
    CHECK(endo_matrix(Rat(3), Rat(4)) == Matrix2Z{3, -1, 4, 0});
    CHECK_THROWS_AS(endo_matrix(Rat(1), Rat(3, 2)), NotIntegralError);
    CHECK_THROWS_AS(endo_matrix(Rat(1, 2), Rat(3)), NotIntegralError);
}

TEST_CASE("teichmuller_map flips the bottom row") {
    CHECK(teichmuller_map(Matrix2Z{0, -1, 5, 0}) == Matrix2Z{0, -1, -5, 0});
    CHECK(teichmuller_map(Matrix2Z{2, -1, 3, 0}) == Matrix2Z{2, -1, -3, 0});
    for (int i = 0; i < 1000; ++i) {
        Matrix2Z m{Int(rand_long(-50, 50)), Int(rand_long(-50, 50)),
                   Int(rand_long(-50, 50)), Int(rand_long(-50, 50))};
        CHECK(teichmuller_map(teichmuller_map(m)) == m);
        Matrix2Z d0{m.a, m.b, m.c, 0};
        Matrix2Z td0 = teichmuller_map(d0);
        CHECK(td0.trace() == d0.trace());
        CHECK(td0.det() == -d0.det());
    }
}

TEST_CASE("functor_on_class pipeline for (5,1)") {
    auto r = functor_on_class(5, 1);
    CHECK(r.cm_case == CmCase::case1);
    REQUIRE(r.alpha0.has_value());
    CHECK(*r.alpha0 == std::pair<Int, Int>{-1, 2});
    REQUIRE(r.endo.has_value());
    CHECK(*r.endo == Matrix2Z{0, -1, 5, 0});
    REQUIRE(r.mapped.has_value());
    CHECK(*r.mapped == Matrix2Z{0, -1, -5, 0});
    CHECK(r.claimed == QuadraticOrder{5, 1});
    REQUIRE(r.recovered_theta.has_value());
    // theta = 1/sqrt(5) = sqrt(5)/5
    CHECK(*r.recovered_theta == QuadraticIrrational::canonicalize(0, 1, 5, 5));
    REQUIRE(r.recovered.has_value());
    CHECK(*r.recovered == QuadraticOrder{5, 2});
    CHECK_FALSE(r.agreement);  // recorded disagreement, not adjudicated
    CHECK(r.min_is_f2D);
    CHECK(r.witnesses_expected);
    CHECK_FALSE(r.case1_even_f);
}

TEST_CASE("functor_on_class pipeline for (2,1) and (3,1)") {
    auto r2 = functor_on_class(2, 1);
    CHECK(r2.cm_case == CmCase::case2);
    REQUIRE(r2.recovered_theta.has_value());
    CHECK(*r2.recovered_theta == QuadraticIrrational::canonicalize(0, 1, 2, 2));
    REQUIRE(r2.recovered.has_value());
    CHECK(*r2.recovered == QuadraticOrder{2, 1});
    CHECK(r2.agreement);
    CHECK(r2.min_is_f2D);
    CHECK(r2.witnesses_expected);

    auto r3 = functor_on_class(3, 1);
    REQUIRE(r3.recovered_theta.has_value());
    CHECK(*r3.recovered_theta == QuadraticIrrational::canonicalize(0, 1, 3, 3));
    REQUIRE(r3.recovered.has_value());
    CHECK(*r3.recovered == QuadraticOrder{3, 1});
    CHECK(r3.agreement);
}

TEST_CASE("recovered generator satisfies f^2 D theta^2 = 1") {
    for (long D : squarefree_radicands_upto(30)) {
        for (long f = 1; f <= 3; ++f) {
            if (cm_case_of(D) == CmCase::case1 && f % 2 == 0) continue;
            auto r = functor_on_class(D, f);
            REQUIRE(r.recovered_theta.has_value());
            CHECK(r.recovered_theta->minpoly() ==
                  IntPoly2{Int(f) * f * D, 0, -1});
        }
    }
}

TEST_CASE("case1 with even conductor is discrepancy-flagged") {
    auto r = functor_on_class(5, 2);
    CHECK(r.case1_even_f);
    REQUIRE(r.search.found);
    // The integrality filter admits norm 5 < f^2 D = 20.
    CHECK(r.search.min_norm == 5);
    CHECK_FALSE(r.min_is_f2D);
    CHECK_FALSE(r.witnesses_expected);
}

TEST_CASE("grid agreement pattern by case") {
    for (long D : squarefree_radicands_upto(30)) {
        for (long f = 1; f <= 3; ++f) {
            auto r = functor_on_class(D, f);
            if (r.cm_case == CmCase::case2) {
                CHECK(r.min_is_f2D);
                CHECK(r.witnesses_expected);
                REQUIRE(r.recovered.has_value());
                CHECK(r.agreement);
            } else if (f % 2 == 1) {
                CHECK(r.min_is_f2D);
                CHECK(r.witnesses_expected);
                REQUIRE(r.recovered.has_value());
                CHECK(r.recovered->D == D);
            } else {
                CHECK(r.case1_even_f);
            }
        }
    }
}

TEST_CASE("functor_on_class input validation") {
    CHECK_THROWS_AS(functor_on_class(12, 1), NonCanonicalRadicandError);
    CHECK_THROWS_AS(functor_on_class(1, 1), NonCanonicalRadicandError);
    CHECK_THROWS_AS(functor_on_class(5, 0), BoundExceededError);
}
