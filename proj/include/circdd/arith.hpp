#pragma once

// Exact integer helpers: checked 128-bit arithmetic, reduced rationals and
// univariate integer polynomials in one variable `a`.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace circdd {

using i128 = __int128;
using u128 = unsigned __int128;

enum class Errc {
    DuplicateGenerator,
    GeneratorOutOfRange,
    ParityMismatch,
    Disconnected,
    NotAUnit,
    Overflow,
    UnsupportedDegree,
    OddDegree,
    ParseError,
    InvariantViolation,
    WrongResidue,
    BelowThreshold,
    NoSubsetForResidue,
    DivisibilityFailure,
    Unsupported,
    BudgetExceeded,
    DegenerateInput,
    InvolutionNotHalfLattice,
    IdentityFailure,
    SuiteFailure,
    ThresholdError,
    Usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const { return code_; }

private:
    Errc code_;
};

i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
int64_t checked_add64(int64_t a, int64_t b);
int64_t checked_mul64(int64_t a, int64_t b);

// Narrowing that throws Overflow instead of wrapping.
int64_t to_i64(i128 v);

i128 abs128(i128 v);
i128 gcd128(i128 a, i128 b);
int64_t gcd64(int64_t a, int64_t b);

// Floor-style remainder in [0, m).
int64_t mod_floor(i128 a, int64_t m);

// Extended gcd: returns g = gcd(a,b) >= 0 with x*a + y*b = g.
i128 ext_gcd(i128 a, i128 b, i128& x, i128& y);

// Inverse of u modulo n; throws NotAUnit if gcd(u,n) > 1.
int64_t mod_inverse(int64_t u, int64_t n);

int64_t mul_mod(int64_t a, int64_t b, int64_t n);

std::string to_string(i128 v);
i128 parse_i128(std::string_view s);

class Rational {
public:
    Rational() = default;
    Rational(i128 n) : num_(n), den_(1) {}
    Rational(i128 n, i128 d);

    i128 num() const { return num_; }
    i128 den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num_, den_); }
    Rational pow(int e) const;

    bool operator==(const Rational& o) const = default;
    std::strong_ordering operator<=>(const Rational& o) const;

    std::string str() const;

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

// Integer polynomial in `a`, coefficients stored lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<i128> ascending);

    // Accepts sums of terms like "3a^2", "-a", "+17"; whitespace ignored.
    static Poly parse(std::string_view text);

    i128 eval(i128 a) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<i128>& coeffs() const { return c_; }
    std::string str() const;

    bool operator==(const Poly& o) const = default;

private:
    void trim();
    std::vector<i128> c_;
};

}  // namespace circdd
