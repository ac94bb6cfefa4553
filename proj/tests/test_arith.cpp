#include <limits>
#include <random>

#include "circdd/arith.hpp"
#include "doctest.h"

using namespace circdd;

TEST_SUITE("arith") {

TEST_CASE("checked arithmetic throws on overflow") {
    const i128 big = static_cast<i128>(1) << 126;
    CHECK_THROWS_AS(checked_add(big, big), Error);
    CHECK_THROWS_AS(checked_mul(big, 4), Error);
    CHECK(checked_mul(-big, 1) == -big);
    CHECK_THROWS_AS(checked_mul64(int64_t{1} << 40, int64_t{1} << 40), Error);
    CHECK_THROWS_AS(to_i64(static_cast<i128>(1) << 70), Error);
    try {
        checked_add64(std::numeric_limits<int64_t>::max(), 1);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Overflow);
    }
}

TEST_CASE("ext_gcd, mod_inverse and mul_mod agree with direct computation") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 2000; ++it) {
        const int64_t a = static_cast<int64_t>(rng() % 2'000'000'000) - 1'000'000'000;
        const int64_t b = static_cast<int64_t>(rng() % 2'000'000'000) - 1'000'000'000;
        i128 x, y;
        const i128 g = ext_gcd(a, b, x, y);
        CHECK(g >= 0);
        CHECK(x * a + y * b == g);
        CHECK(g == gcd128(a, b));
        const int64_t n = 2 + static_cast<int64_t>(rng() % 1'000'000'000'000);
        const int64_t u = 1 + static_cast<int64_t>(rng() % static_cast<uint64_t>(n - 1));
        if (gcd64(u, n) == 1) {
            CHECK(mul_mod(u, mod_inverse(u, n), n) == 1 % n);
        } else {
            CHECK_THROWS_AS(mod_inverse(u, n), Error);
        }
        const int64_t v = static_cast<int64_t>(rng() % static_cast<uint64_t>(n));
        CHECK(mul_mod(u, v, n) == static_cast<int64_t>((static_cast<i128>(u) * v) % n));
    }
    CHECK(mod_floor(-7, 5) == 3);
    CHECK(mod_floor(static_cast<i128>(-10), 5) == 0);
}

TEST_CASE("i128 string round trip") {
    const i128 v = -(static_cast<i128>(1) << 100) + 12345;
    CHECK(parse_i128(to_string(v)) == v);
    CHECK(to_string(0) == "0");
}

TEST_CASE("rationals are reduced with positive denominators") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(4, 5).pow(5) == Rational(1024, 3125));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-7, 3).str() == "-7/3");
    CHECK(Rational(4).str() == "4");
}

TEST_CASE("polynomials parse, print and evaluate") {
    Poly p = Poly::parse("4a^3 - 2a^2+ a -17");
    CHECK(p.degree() == 3);
    CHECK(p.eval(0) == -17);
    CHECK(p.eval(3) == 4 * 27 - 2 * 9 + 3 - 17);
    CHECK(Poly::parse(p.str()) == p);
    CHECK(Poly::parse("-a") .eval(5) == -5);
    CHECK(Poly::parse("0").eval(9) == 0);
    CHECK_THROWS_AS(Poly::parse("3b"), Error);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        std::vector<i128> c;
        for (int i = 0; i < 6; ++i) c.push_back(static_cast<int64_t>(rng() % 201) - 100);
        Poly q(c);
        CHECK(Poly::parse(q.str()) == q);
        const i128 a = static_cast<int64_t>(rng() % 41) - 20;
        i128 naive = 0, pw = 1;
        for (auto ci : c) naive += ci * pw, pw *= a;
        CHECK(q.eval(a) == naive);
    }
}

}
