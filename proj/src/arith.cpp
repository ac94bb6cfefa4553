#include "circdd/arith.hpp"

#include <algorithm>
#include <cctype>

namespace circdd {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DuplicateGenerator: return "DuplicateGenerator";
        case Errc::GeneratorOutOfRange: return "GeneratorOutOfRange";
        case Errc::ParityMismatch: return "ParityMismatch";
        case Errc::Disconnected: return "Disconnected";
        case Errc::NotAUnit: return "NotAUnit";
        case Errc::Overflow: return "Overflow";
        case Errc::UnsupportedDegree: return "UnsupportedDegree";
        case Errc::OddDegree: return "OddDegree";
        case Errc::ParseError: return "ParseError";
        case Errc::InvariantViolation: return "InvariantViolation";
        case Errc::WrongResidue: return "WrongResidue";
        case Errc::BelowThreshold: return "BelowThreshold";
        case Errc::NoSubsetForResidue: return "NoSubsetForResidue";
        case Errc::DivisibilityFailure: return "DivisibilityFailure";
        case Errc::Unsupported: return "Unsupported";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::DegenerateInput: return "DegenerateInput";
        case Errc::InvolutionNotHalfLattice: return "InvolutionNotHalfLattice";
        case Errc::IdentityFailure: return "IdentityFailure";
        case Errc::SuiteFailure: return "SuiteFailure";
        case Errc::ThresholdError: return "ThresholdError";
        case Errc::Usage: return "UsageError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit addition");
    return r;
}

i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit subtraction");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "128-bit multiplication");
    return r;
}

int64_t checked_add64(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "64-bit addition");
    return r;
}

int64_t checked_mul64(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "64-bit multiplication");
    return r;
}

int64_t to_i64(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error(Errc::Overflow, "value exceeds 64 bits: " + to_string(v));
    return static_cast<int64_t>(v);
}

i128 abs128(i128 v) { return v < 0 ? checked_sub(0, v) : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t gcd64(int64_t a, int64_t b) { return to_i64(gcd128(a, b)); }

int64_t mod_floor(i128 a, int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<int64_t>(r);
}

i128 ext_gcd(i128 a, i128 b, i128& x, i128& y) {
    i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i128 q = a / b;
        i128 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

int64_t mod_inverse(int64_t u, int64_t n) {
    i128 x, y;
    i128 g = ext_gcd(mod_floor(u, n), n, x, y);
    if (g != 1) throw Error(Errc::NotAUnit, std::to_string(u) + " is not a unit modulo " + std::to_string(n));
    return mod_floor(x, n);
}

int64_t mul_mod(int64_t a, int64_t b, int64_t n) {
    return mod_floor(static_cast<i128>(a) * b, n);
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

i128 parse_i128(std::string_view s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw Error(Errc::ParseError, "empty integer");
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(Errc::ParseError, "bad integer '" + std::string(s) + "'");
        v = checked_add(checked_mul(v, 10), s[i] - '0');
    }
    return neg ? -v : v;
}

Rational::Rational(i128 n, i128 d) : num_(n), den_(d) {
    if (d == 0) throw Error(Errc::InvariantViolation, "zero denominator");
    if (den_ < 0) {
        num_ = checked_sub(0, num_);
        den_ = checked_sub(0, den_);
    }
    i128 g = gcd128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    i128 g = gcd128(den_, o.den_);
    i128 l = checked_mul(den_ / g, o.den_);
    return Rational(checked_add(checked_mul(num_, l / den_), checked_mul(o.num_, l / o.den_)), l);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    i128 g1 = gcd128(num_, o.den_);
    i128 g2 = gcd128(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw Error(Errc::InvariantViolation, "division by zero rational");
    return *this * Rational(o.den_, o.num_);
}

Rational Rational::pow(int e) const {
    Rational r(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    i128 l = checked_mul(num_, o.den_);
    i128 r = checked_mul(o.num_, den_);
    return l <=> r;
}

std::string Rational::str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Poly::Poly(std::vector<i128> ascending) : c_(std::move(ascending)) { trim(); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::parse(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");
    std::vector<i128> c;
    size_t i = 0;
    auto fail = [&] { throw Error(Errc::ParseError, "bad polynomial '" + std::string(text) + "'"); };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail();
        }
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        i128 coef = start == i ? 1 : parse_i128(std::string_view(s).substr(start, i - start));
        size_t exp = 0;
        if (i < s.size() && s[i] == 'a') {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t es = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (es == i) fail();
                exp = std::stoul(s.substr(es, i - es));
            }
        } else if (start == i) {
            fail();
        }
        if (c.size() <= exp) c.resize(exp + 1, 0);
        c[exp] = checked_add(c[exp], sign * coef);
    }
    return Poly(std::move(c));
}

i128 Poly::eval(i128 a) const {
    i128 v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = checked_add(checked_mul(v, a), *it);
    return v;
}

std::string Poly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (int e = degree(); e >= 0; --e) {
        i128 c = c_[e];
        if (c == 0) continue;
        out += c < 0 ? "-" : (out.empty() ? "" : "+");
        i128 m = c < 0 ? -c : c;
        if (m != 1 || e == 0) out += to_string(m);
        if (e >= 1) out += "a";
        if (e >= 2) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace circdd
