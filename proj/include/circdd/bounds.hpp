#pragma once

#include <optional>

#include "circdd/arith.hpp"

namespace circdd {

// |S_{f,k}|: lattice points of Z^f with l1 norm at most k.
i128 lee_sphere_size(int f, int k);

// Abelian Cayley upper bound on the order for degree d and diameter k.
i128 m_ac(int d, int k);

// R_f = 2^{f-1} f! / f^f.
Rational ratio_rf(int f);

struct CoefficientPair {
    Rational leading;
    Rational second;
};

// Leading and second coefficients (in k) of the conjectured extremal order.
CoefficientPair conjectured_terms(int d);

enum class LowerBound { CJ, DF_AC };

// The second coefficient of CJ is (b/2)(4/f)^{f-1} with b known only to satisfy b <= b_max.
struct InequalityTerm {
    Rational scale;  // (1/2)(4/f)^{f-1}
    int b_max;       // 13 - 4f
    Rational upper() const { return scale * Rational(b_max); }
};

struct LowerBoundTerms {
    Rational leading;
    std::optional<Rational> second;         // DF_AC
    std::optional<InequalityTerm> second_bound;  // CJ
};

LowerBoundTerms lower_bound_leading(int d, LowerBound which);

struct BoundReport {
    int degree = 0;
    int diameter = 0;
    i128 m_ac = 0;
    std::optional<CoefficientPair> conjectured;
    Rational r_f;
};

BoundReport bound_report(int d, int k);

}  // namespace circdd
