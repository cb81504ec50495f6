#pragma once

// Exact arithmetic substrate: big rationals, elements of Z[1/p] and
// elements of a real quadratic field Q(sqrt(D)).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nsol {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when two quadratic values with different radicands meet.
class RadicandMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Rat make_rat(const Int& num, const Int& den);
Int floor_rat(const Rat& q);
Rat frac_rat(const Rat& q);  // q - floor(q), in [0, 1)
bool is_integer(const Rat& q);
Int ipow(const Int& base, unsigned long exp);
std::string to_string(const Int& z);
std::string to_string(const Rat& q);
Rat parse_rat(std::string_view text);

/// p-adic valuation of a nonzero integer.
long valuation(const Int& z, unsigned long p);
bool is_prime(unsigned long n);
bool is_squarefree(unsigned long n);

struct Bezout {
    Int g;  // gcd, always >= 0
    Int s;
    Int t;  // s*u + t*v == g
};

/// Extended Euclid with the convention gcd(u, 0) = |u|. Throws for (0, 0).
Bezout ext_gcd(const Int& u, const Int& v);

/// Canonical element j/p^k of Z[1/p]: k is minimal.
class PFrac {
public:
    PFrac() = default;
    PFrac(unsigned long p, Int j, unsigned long k = 0);
    static PFrac from_rat(unsigned long p, const Rat& q);
    static PFrac parse(unsigned long p, std::string_view text);

    unsigned long prime() const { return p_; }
    const Int& numerator() const { return j_; }
    unsigned long exponent() const { return k_; }
    bool is_zero() const { return j_ == 0; }
    Rat to_rat() const;
    std::string str() const;  // "j/p^k", or "j" when k == 0

    friend PFrac operator+(const PFrac& a, const PFrac& b);
    friend PFrac operator-(const PFrac& a, const PFrac& b);
    friend PFrac operator*(const PFrac& a, const PFrac& b);
    PFrac operator-() const { return PFrac(p_, -j_, k_); }
    friend bool operator==(const PFrac&, const PFrac&) = default;

private:
    void normalize();
    static unsigned long common_prime(const PFrac& a, const PFrac& b);

    unsigned long p_ = 2;
    Int j_ = 0;
    unsigned long k_ = 0;
};

/// a + b*sqrt(D) with rational a, b and square-free D > 1. A value with
/// b == 0 is rational and combines with any radicand.
class QuadReal {
public:
    QuadReal() = default;
    QuadReal(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    QuadReal(Rat a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
    QuadReal(Rat a, Rat b, unsigned long radicand);

    /// Parses "(a + b*sqrt(D))/c", "(a - b*sqrt(D))/c", "a/c" or "a".
    static QuadReal parse(std::string_view text);

    const Rat& rational_part() const { return a_; }
    const Rat& surd_coefficient() const { return b_; }
    /// 0 when the value is rational.
    unsigned long radicand() const { return b_ == 0 ? 0 : d_; }
    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    int sign() const;

    QuadReal conjugate() const;
    Rat norm() const;  // a^2 - D b^2

    QuadReal operator-() const;
    QuadReal& operator+=(const QuadReal& o);
    QuadReal& operator-=(const QuadReal& o);
    QuadReal& operator*=(const QuadReal& o);
    QuadReal& operator/=(const QuadReal& o);
    friend QuadReal operator+(QuadReal x, const QuadReal& y) { return x += y; }
    friend QuadReal operator-(QuadReal x, const QuadReal& y) { return x -= y; }
    friend QuadReal operator*(QuadReal x, const QuadReal& y) { return x *= y; }
    friend QuadReal operator/(QuadReal x, const QuadReal& y) { return x /= y; }

    friend bool operator==(const QuadReal& x, const QuadReal& y);
    friend std::strong_ordering operator<=>(const QuadReal& x, const QuadReal& y);

    Int floor() const;
    QuadReal frac() const { return *this - QuadReal(Rat(floor())); }
    double to_double() const;
    std::string str() const;

private:
    static unsigned long joint_radicand(const QuadReal& x, const QuadReal& y);

    Rat a_ = 0;
    Rat b_ = 0;
    unsigned long d_ = 0;
};

/// Sign of u + v*sqrt(D) by signed squaring.
int sign_of(const Rat& u, const Rat& v, unsigned long radicand);

std::ostream& operator<<(std::ostream& os, const QuadReal& x);
std::ostream& operator<<(std::ostream& os, const PFrac& x);

}  // namespace nsol
