#pragma once

// Exact p-adic numbers. Rational p-adics carry their eventually periodic
// digit expansion in canonical form; finite digit windows (for streams that
// are not known to be periodic) live in TruncatedPAdic.

#include "nsol/exactnum.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace nsol {

/// Raised when a truncated expansion does not determine the requested digits.
class PrecisionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using Digits = std::vector<unsigned long>;

class PAdic {
public:
    static constexpr long kZeroOrder = std::numeric_limits<long>::max();

    PAdic() : PAdic(2) {}
    explicit PAdic(unsigned long p);  // zero

    static PAdic from_rational(unsigned long p, const Rat& q);
    /// Value sum_{i} pre[i] p^{ord+i} + periodic tail; the result is canonical.
    static PAdic from_digits(unsigned long p, long ord, const Digits& preperiod, const Digits& period);

    unsigned long prime() const { return p_; }
    long ord() const { return ord_; }
    bool is_zero() const { return ord_ == kZeroOrder; }
    bool is_integral() const { return ord_ >= 0; }
    const Rat& value() const { return value_; }
    const Digits& preperiod() const { return pre_; }
    const Digits& period() const { return period_; }

    /// Digit at absolute index i (coefficient of p^i).
    unsigned long digit(long i) const;

    PAdic invert() const;
    /// -x assembled digitwise: (p - x_v) p^v + sum_{j>v} (p - 1 - x_j) p^j.
    PAdic negate_digits() const;
    PFrac frac_part() const;
    /// sum_{j=lo}^{hi} x_j p^j, zero when hi < lo.
    PFrac truncate_sum(long lo, long hi) const;
    /// The integral part x - {x}_p as a p-adic integer.
    PAdic integral_part() const;

    friend PAdic operator+(const PAdic& a, const PAdic& b);
    friend PAdic operator-(const PAdic& a, const PAdic& b);
    friend PAdic operator*(const PAdic& a, const PAdic& b);
    friend PAdic operator*(const PAdic& a, const PFrac& s);
    PAdic operator-() const { return from_rational(p_, -value_); }
    friend bool operator==(const PAdic& a, const PAdic& b) {
        return a.p_ == b.p_ && a.value_ == b.value_;
    }

    std::string str() const;  // e.g. "3 + 2*5 + (2)*5^2..." style debugging form

private:
    static unsigned long common_prime(const PAdic& a, const PAdic& b);

    unsigned long p_;
    Rat value_;
    long ord_ = kZeroOrder;
    Digits pre_;
    Digits period_{0};
};

/// A p-adic number known to absolute precision N: digits x_ord .. x_{N-1}.
class TruncatedPAdic {
public:
    TruncatedPAdic(unsigned long p, long ord, Digits digits);
    static TruncatedPAdic from_padic(const PAdic& x, long absolute_precision);

    unsigned long prime() const { return p_; }
    long ord() const { return ord_; }
    const Digits& digits() const { return digits_; }
    long absolute_precision() const { return ord_ + static_cast<long>(digits_.size()); }
    std::size_t relative_precision() const { return digits_.size(); }
    bool is_zero() const { return digits_.empty(); }

    /// Digit at absolute index i; throws PrecisionError beyond the window.
    unsigned long digit(long i) const;
    /// sum_j digits[j] p^j, i.e. x / p^ord mod p^{relative precision}.
    Int unit() const;

    /// Inverse by Newton lifting on the unit part; keeps the relative precision.
    TruncatedPAdic invert() const;
    PFrac frac_part() const;
    PFrac truncate_sum(long lo, long hi) const;

    friend TruncatedPAdic operator*(const TruncatedPAdic& a, const TruncatedPAdic& b);

private:
    unsigned long p_;
    long ord_;
    Digits digits_;
};

/// {x*y}_p when x, y are truncated: needs the product known through index -1.
PFrac frac_part_of_product(const TruncatedPAdic& x, const TruncatedPAdic& y);

}  // namespace nsol
