#include "circdd/bounds.hpp"

namespace circdd {

namespace {

i128 binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    i128 v = 1;
    for (int i = 1; i <= r; ++i) v = checked_mul(v, n - r + i) / i;
    return v;
}

}  // namespace

i128 lee_sphere_size(int f, int k) {
    if (f < 1 || k < 0) throw Error(Errc::InvariantViolation, "lee_sphere_size needs f >= 1, k >= 0");
    i128 total = 0;
    i128 pow2 = 1;
    for (int i = 0; i <= f; ++i) {
        total = checked_add(total, checked_mul(checked_mul(pow2, binom(f, i)), binom(k, i)));
        pow2 = checked_mul(pow2, 2);
    }
    return total;
}

i128 m_ac(int d, int k) {
    if (d < 2 || k < 1) throw Error(Errc::InvariantViolation, "m_ac needs d >= 2, k >= 1");
    int f = d / 2;
    if (d % 2 == 0) return lee_sphere_size(f, k);
    return checked_add(lee_sphere_size(f, k), lee_sphere_size(f, k - 1));
}

Rational ratio_rf(int f) {
    if (f < 1) throw Error(Errc::InvariantViolation, "ratio_rf needs f >= 1");
    i128 num = 1;
    for (int i = 0; i < f - 1; ++i) num = checked_mul(num, 2);
    for (int i = 2; i <= f; ++i) num = checked_mul(num, i);
    i128 den = 1;
    for (int i = 0; i < f; ++i) den = checked_mul(den, f);
    return Rational(num, den);
}

CoefficientPair conjectured_terms(int d) {
    if (d < 2 || d > 15) throw Error(Errc::UnsupportedDegree, "conjectured_terms supports 2 <= d <= 15");
    int f = d / 2;
    Rational q(4, f);
    if (d % 2 == 0) return {Rational(1, 2) * q.pow(f), q.pow(f - 1)};
    return {q.pow(f), Rational(0)};
}

LowerBoundTerms lower_bound_leading(int d, LowerBound which) {
    if (d % 2 != 0) throw Error(Errc::OddDegree, "lower bounds are stated for even degree");
    int f = d / 2;
    if (f < 3) throw Error(Errc::UnsupportedDegree, "lower bounds need f >= 3");
    Rational q(4, f);
    LowerBoundTerms t;
    t.leading = Rational(1, 2) * q.pow(f);
    if (which == LowerBound::DF_AC) {
        t.second = q.pow(f - 1);
    } else {
        t.second_bound = InequalityTerm{Rational(1, 2) * q.pow(f - 1), 13 - 4 * f};
    }
    return t;
}

BoundReport bound_report(int d, int k) {
    BoundReport r;
    r.degree = d;
    r.diameter = k;
    r.m_ac = m_ac(d, k);
    if (d <= 15) r.conjectured = conjectured_terms(d);
    r.r_f = ratio_rf(d / 2);
    return r;
}

}  // namespace circdd
