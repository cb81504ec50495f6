#include "nsol/padic.hpp"

#include <map>
#include <sstream>

namespace nsol {

namespace {

unsigned long mod_p(const Int& z, unsigned long p) {
    return mpz_fdiv_ui(z.get_mpz_t(), p);
}

// Sum digits[i] * p^i.
Int horner(const Digits& digits, unsigned long p) {
    Int acc = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        acc = acc * p + *it;
    }
    return acc;
}

Rat scale_by_power(const Rat& q, unsigned long p, long e) {
    if (e >= 0) {
        return q * Rat(ipow(Int(p), static_cast<unsigned long>(e)));
    }
    return q / Rat(ipow(Int(p), static_cast<unsigned long>(-e)));
}

void check_digits(const Digits& d, unsigned long p) {
    for (const auto x : d) {
        if (x >= p) {
            throw std::invalid_argument("p-adic digit " + std::to_string(x) + " out of range for p = " +
                                        std::to_string(p));
        }
    }
}

}  // namespace

PAdic::PAdic(unsigned long p) : p_(p), value_(0) {
    if (!is_prime(p)) {
        throw std::invalid_argument("PAdic: " + std::to_string(p) + " is not prime");
    }
}

PAdic PAdic::from_rational(unsigned long p, const Rat& q) {
    PAdic out(p);
    out.value_ = q;
    out.value_.canonicalize();
    if (q == 0) {
        return out;
    }
    const long vn = valuation(q.get_num(), p);
    const long vd = valuation(q.get_den(), p);
    out.ord_ = vn - vd;
    Int u = q.get_num();
    Int w = q.get_den();
    for (long i = 0; i < vn; ++i) {
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
    }
    for (long i = 0; i < vd; ++i) {
        mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), p);
    }
    // Digits of the unit u/w: each step peels off d = u * w^{-1} mod p.
    Int w_inv;
    const Int pp(p);
    mpz_invert(w_inv.get_mpz_t(), w.get_mpz_t(), pp.get_mpz_t());
    std::map<Int, std::size_t> seen;
    Digits digits;
    while (true) {
        const auto [it, fresh] = seen.emplace(u, digits.size());
        if (!fresh) {
            const std::size_t start = it->second;
            out.pre_.assign(digits.begin(), digits.begin() + static_cast<long>(start));
            out.period_.assign(digits.begin() + static_cast<long>(start), digits.end());
            break;
        }
        const unsigned long d = mod_p(Int(u * w_inv), p);
        digits.push_back(d);
        u -= w * d;
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
    }
    return out;
}

PAdic PAdic::from_digits(unsigned long p, long ord, const Digits& preperiod, const Digits& period) {
    if (period.empty()) {
        throw std::invalid_argument("PAdic: period must be nonempty");
    }
    check_digits(preperiod, p);
    check_digits(period, p);
    const Int pre = horner(preperiod, p);
    const Int per = horner(period, p);
    const Int pl = ipow(Int(p), preperiod.size());
    const Int pt = ipow(Int(p), period.size());
    const Rat unit = Rat(pre) + Rat(pl) * make_rat(per, Int(1) - pt);
    return from_rational(p, scale_by_power(unit, p, ord));
}

unsigned long PAdic::common_prime(const PAdic& a, const PAdic& b) {
    if (a.p_ != b.p_) {
        throw std::invalid_argument("PAdic: mixed primes");
    }
    return a.p_;
}

unsigned long PAdic::digit(long i) const {
    if (is_zero() || i < ord_) {
        return 0;
    }
    const auto rel = static_cast<std::size_t>(i - ord_);
    if (rel < pre_.size()) {
        return pre_[rel];
    }
    return period_[(rel - pre_.size()) % period_.size()];
}

PAdic PAdic::invert() const {
    if (is_zero()) {
        throw std::domain_error("PAdic: inverse of zero");
    }
    return from_rational(p_, 1 / value_);
}

PAdic PAdic::negate_digits() const {
    if (is_zero()) {
        return *this;
    }
    // Unroll one period so that index ord is always in the explicit prefix.
    Digits head = pre_;
    head.insert(head.end(), period_.begin(), period_.end());
    Digits neg_head;
    neg_head.reserve(head.size());
    neg_head.push_back(p_ - head.front());
    for (std::size_t i = 1; i < head.size(); ++i) {
        neg_head.push_back(p_ - 1 - head[i]);
    }
    Digits neg_period;
    neg_period.reserve(period_.size());
    for (const auto d : period_) {
        neg_period.push_back(p_ - 1 - d);
    }
    return from_digits(p_, ord_, neg_head, neg_period);
}

PFrac PAdic::frac_part() const {
    if (is_zero() || ord_ >= 0) {
        return PFrac(p_, 0);
    }
    return truncate_sum(ord_, -1);
}

PFrac PAdic::truncate_sum(long lo, long hi) const {
    if (hi < lo || is_zero()) {
        return PFrac(p_, 0);
    }
    lo = std::max(lo, ord_);
    if (hi < lo) {
        return PFrac(p_, 0);
    }
    Int acc = 0;
    for (long j = hi; j >= lo; --j) {
        acc = acc * p_ + digit(j);
    }
    // acc = sum_j x_j p^{j - lo}
    if (lo >= 0) {
        return PFrac(p_, acc * ipow(Int(p_), static_cast<unsigned long>(lo)), 0);
    }
    return PFrac(p_, acc, static_cast<unsigned long>(-lo));
}

PAdic PAdic::integral_part() const { return from_rational(p_, value_ - frac_part().to_rat()); }

PAdic operator+(const PAdic& a, const PAdic& b) {
    return PAdic::from_rational(PAdic::common_prime(a, b), a.value_ + b.value_);
}

PAdic operator-(const PAdic& a, const PAdic& b) {
    return PAdic::from_rational(PAdic::common_prime(a, b), a.value_ - b.value_);
}

PAdic operator*(const PAdic& a, const PAdic& b) {
    return PAdic::from_rational(PAdic::common_prime(a, b), a.value_ * b.value_);
}

PAdic operator*(const PAdic& a, const PFrac& s) {
    if (a.p_ != s.prime()) {
        throw std::invalid_argument("PAdic: mixed primes");
    }
    return PAdic::from_rational(a.p_, a.value_ * s.to_rat());
}

std::string PAdic::str() const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    os << "ord " << ord_ << " [";
    for (std::size_t i = 0; i < pre_.size(); ++i) {
        os << (i ? "," : "") << pre_[i];
    }
    os << "](";
    for (std::size_t i = 0; i < period_.size(); ++i) {
        os << (i ? "," : "") << period_[i];
    }
    os << ")";
    return os.str();
}

// -------------------------------------------------------- TruncatedPAdic

TruncatedPAdic::TruncatedPAdic(unsigned long p, long ord, Digits digits)
    : p_(p), ord_(ord), digits_(std::move(digits)) {
    if (!is_prime(p)) {
        throw std::invalid_argument("TruncatedPAdic: " + std::to_string(p) + " is not prime");
    }
    check_digits(digits_, p);
    // Strip leading zeros into the order; all-zero windows become the empty window.
    std::size_t lead = 0;
    while (lead < digits_.size() && digits_[lead] == 0) {
        ++lead;
    }
    ord_ += static_cast<long>(lead);
    digits_.erase(digits_.begin(), digits_.begin() + static_cast<long>(lead));
}

TruncatedPAdic TruncatedPAdic::from_padic(const PAdic& x, long absolute_precision) {
    if (x.is_zero()) {
        return TruncatedPAdic(x.prime(), absolute_precision, {});
    }
    Digits d;
    for (long i = x.ord(); i < absolute_precision; ++i) {
        d.push_back(x.digit(i));
    }
    return TruncatedPAdic(x.prime(), std::min(x.ord(), absolute_precision), std::move(d));
}

unsigned long TruncatedPAdic::digit(long i) const {
    if (i >= absolute_precision()) {
        throw PrecisionError("digit " + std::to_string(i) + " beyond absolute precision " +
                             std::to_string(absolute_precision()));
    }
    if (i < ord_) {
        return 0;
    }
    return digits_[static_cast<std::size_t>(i - ord_)];
}

Int TruncatedPAdic::unit() const { return horner(digits_, p_); }

TruncatedPAdic TruncatedPAdic::invert() const {
    if (is_zero()) {
        throw std::domain_error("TruncatedPAdic: inverse of a value that is zero to working precision");
    }
    const std::size_t n = digits_.size();
    const Int u = unit();
    const Int pp(p_);
    // Newton iteration y <- y (2 - u y) doubles the number of correct digits.
    Int y;
    const Int u0(digits_.front());
    mpz_invert(y.get_mpz_t(), u0.get_mpz_t(), pp.get_mpz_t());
    std::size_t correct = 1;
    while (correct < n) {
        correct = std::min(2 * correct, n);
        const Int mod = ipow(pp, correct);
        y = y * (2 - u * y);
        mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), mod.get_mpz_t());
    }
    Digits out(n);
    Int rest = y;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p_);
    }
    return TruncatedPAdic(p_, -ord_, std::move(out));
}

PFrac TruncatedPAdic::frac_part() const {
    if (absolute_precision() < 0) {
        throw PrecisionError("fractional part needs digits through index -1; precision is " +
                             std::to_string(absolute_precision()));
    }
    return truncate_sum(ord_, -1);
}

PFrac TruncatedPAdic::truncate_sum(long lo, long hi) const {
    if (hi < lo) {
        return PFrac(p_, 0);
    }
    if (hi >= absolute_precision()) {
        throw PrecisionError("window end " + std::to_string(hi) + " beyond absolute precision " +
                             std::to_string(absolute_precision()));
    }
    lo = std::max(lo, ord_);
    if (hi < lo) {
        return PFrac(p_, 0);
    }
    Int acc = 0;
    for (long j = hi; j >= lo; --j) {
        acc = acc * p_ + digit(j);
    }
    if (lo >= 0) {
        return PFrac(p_, acc * ipow(Int(p_), static_cast<unsigned long>(lo)), 0);
    }
    return PFrac(p_, acc, static_cast<unsigned long>(-lo));
}

TruncatedPAdic operator*(const TruncatedPAdic& a, const TruncatedPAdic& b) {
    if (a.p_ != b.p_) {
        throw std::invalid_argument("TruncatedPAdic: mixed primes");
    }
    const std::size_t n = std::min(a.digits_.size(), b.digits_.size());
    const long ord = a.ord_ + b.ord_;
    if (n == 0) {
        // Known only to be zero modulo p^{ord + n}.
        const long prec = std::min(a.absolute_precision() + b.ord_, b.absolute_precision() + a.ord_);
        return TruncatedPAdic(a.p_, prec, {});
    }
    Int prod = a.unit() * b.unit();
    const Int mod = ipow(Int(a.p_), n);
    mpz_fdiv_r(prod.get_mpz_t(), prod.get_mpz_t(), mod.get_mpz_t());
    Digits out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = mpz_fdiv_q_ui(prod.get_mpz_t(), prod.get_mpz_t(), a.p_);
    }
    return TruncatedPAdic(a.p_, ord, std::move(out));
}

PFrac frac_part_of_product(const TruncatedPAdic& x, const TruncatedPAdic& y) {
    return (x * y).frac_part();
}

}  // namespace nsol
