#include <cstdlib>
#include <functional>

#include "circdd/bounds.hpp"
#include "doctest.h"

using namespace circdd;

namespace {

// Direct enumeration of the l1 ball in Z^f.
i128 lee_by_enumeration(int f, int k) {
    std::function<i128(int, int)> rec = [&](int dims, int budget) -> i128 {
        if (dims == 0) return 1;
        i128 total = 0;
        for (int x = -budget; x <= budget; ++x) total += rec(dims - 1, budget - std::abs(x));
        return total;
    };
    return rec(f, k);
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("Lee sphere sizes match enumeration") {
    for (int f = 1; f <= 5; ++f)
        for (int k = 0; k <= 7; ++k) CHECK(lee_sphere_size(f, k) == lee_by_enumeration(f, k));
}

TEST_CASE("Lee sphere sizes obey the Pascal-type recurrence") {
    // |S_{f,k}| = |S_{f,k-1}| + |S_{f-1,k}| + |S_{f-1,k-1}|
    for (int f = 2; f <= 8; ++f)
        for (int k = 1; k <= 40; ++k)
            CHECK(lee_sphere_size(f, k) ==
                  lee_sphere_size(f, k - 1) + lee_sphere_size(f - 1, k) + lee_sphere_size(f - 1, k - 1));
}

TEST_CASE("m_ac for even and odd degree") {
    CHECK(m_ac(10, 2) == 61);
    CHECK(m_ac(10, 3) == 231);
    CHECK(m_ac(10, 4) == 681);
    CHECK(m_ac(10, 5) == 1683);
    CHECK(m_ac(11, 2) == 72);
    CHECK(m_ac(11, 3) == 292);
    for (int f = 1; f <= 6; ++f)
        for (int k = 1; k <= 20; ++k) {
            CHECK(m_ac(2 * f, k) == lee_sphere_size(f, k));
            CHECK(m_ac(2 * f + 1, k) == lee_sphere_size(f, k) + lee_sphere_size(f, k - 1));
        }
    CHECK_THROWS_AS(m_ac(1, 3), Error);
}

TEST_CASE("R_f values") {
    CHECK(ratio_rf(1) == Rational(1));
    CHECK(ratio_rf(2) == Rational(1));
    CHECK(ratio_rf(3) == Rational(8, 9));
    CHECK(ratio_rf(5) == Rational(384, 625));
    // 2^{f-1} f! / f^f recomputed from the definition
    for (int f = 1; f <= 9; ++f) {
        Rational v(1);
        for (int i = 1; i <= f; ++i) v = v * Rational(2 * i, f);
        CHECK(ratio_rf(f) == v / Rational(2));
    }
}

TEST_CASE("conjectured terms for degree 10 and 11") {
    auto t10 = conjectured_terms(10);
    CHECK(t10.leading == Rational(512, 3125));
    CHECK(t10.second == Rational(256, 625));
    auto t11 = conjectured_terms(11);
    CHECK(t11.leading == Rational(1024, 3125));
    CHECK(t11.second == Rational(0));
    CHECK_THROWS_AS(conjectured_terms(40), Error);
}

TEST_CASE("lower bound terms") {
    auto cj = lower_bound_leading(10, LowerBound::CJ);
    REQUIRE(cj.second_bound.has_value());
    CHECK(!cj.second.has_value());
    CHECK(cj.second_bound->b_max == 13 - 4 * 5);
    auto df = lower_bound_leading(10, LowerBound::DF_AC);
    CHECK(df.second.has_value());
    CHECK_THROWS_AS(lower_bound_leading(11, LowerBound::CJ), Error);
}

TEST_CASE("bound report") {
    auto r = bound_report(10, 4);
    CHECK(r.m_ac == 681);
    CHECK(r.r_f == Rational(384, 625));
    REQUIRE(r.conjectured.has_value());
    CHECK(r.conjectured->leading == Rational(512, 3125));
}

}
