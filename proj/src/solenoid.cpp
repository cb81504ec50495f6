#include "nsol/solenoid.hpp"

#include <algorithm>

namespace nsol {

// ---------------------------------------------------------- DigitStream

DigitStream DigitStream::periodic(const PAdic& x) {
    if (!x.is_integral()) {
        throw std::invalid_argument("digit stream must be a p-adic integer, got order " +
                                    std::to_string(x.ord()));
    }
    DigitStream out;
    out.p_ = x.prime();
    out.padic_ = x;
    return out;
}

DigitStream DigitStream::finite(unsigned long p, Digits prefix) {
    if (!is_prime(p)) {
        throw std::invalid_argument("digit stream: " + std::to_string(p) + " is not prime");
    }
    for (const auto d : prefix) {
        if (d >= p) {
            throw std::invalid_argument("digit stream: digit out of range");
        }
    }
    DigitStream out;
    out.p_ = p;
    out.padic_.reset();
    out.prefix_ = std::move(prefix);
    return out;
}

std::optional<std::size_t> DigitStream::known_length() const {
    if (padic_) {
        return std::nullopt;
    }
    return prefix_.size();
}

unsigned long DigitStream::at(std::size_t n) const {
    if (padic_) {
        return padic_->digit(static_cast<long>(n));
    }
    if (n >= prefix_.size()) {
        throw PrecisionError("digit x_" + std::to_string(n) + " is beyond the " +
                             std::to_string(prefix_.size()) + " known digits");
    }
    return prefix_[n];
}

Int DigitStream::partial_sum(std::size_t n) const {
    Int acc = 0;
    for (std::size_t j = n; j-- > 0;) {
        acc = acc * p_ + at(j);
    }
    return acc;
}

DigitStream DigitStream::shifted(std::size_t k) const {
    if (padic_) {
        const Rat rest = (padic_->value() - Rat(partial_sum(k))) / Rat(ipow(Int(p_), k));
        return periodic(PAdic::from_rational(p_, rest));
    }
    if (k > prefix_.size()) {
        throw PrecisionError("cannot shift past the known digits");
    }
    return finite(p_, Digits(prefix_.begin() + static_cast<long>(k), prefix_.end()));
}

DigitStream DigitStream::negated() const {
    if (padic_) {
        return periodic(-*padic_);
    }
    const auto n = prefix_.size();
    const PAdic neg = PAdic::from_rational(p_, -Rat(partial_sum(n)));
    Digits out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = neg.digit(static_cast<long>(j));
    }
    return finite(p_, std::move(out));
}

// ---------------------------------------------------------- SolenoidSpec

SolenoidSpec::SolenoidSpec(unsigned long prime, QuadReal theta_value, DigitStream stream)
    : p(prime), theta(std::move(theta_value)), digits(std::move(stream)) {
    if (digits.prime() != p) {
        throw std::invalid_argument("solenoid spec: digit stream prime differs from p");
    }
}

SolenoidSpec::SolenoidSpec(unsigned long prime, QuadReal theta_value, const Rat& x)
    : SolenoidSpec(prime, std::move(theta_value), DigitStream::periodic(PAdic::from_rational(prime, x))) {}

// ------------------------------------------------------------ SeqWindow

SeqWindow::SeqWindow(std::vector<WindowEntry> entries) {
    for (auto& e : entries) {
        push(e.index, std::move(e.value));
    }
}

void SeqWindow::push(long index, QuadReal value) {
    if (!entries_.empty() && index <= entries_.back().index) {
        throw std::invalid_argument("window indices must be strictly increasing");
    }
    entries_.push_back({index, std::move(value)});
}

const QuadReal& SeqWindow::at_index(long index) const {
    const auto it = std::find_if(entries_.begin(), entries_.end(),
                                 [index](const WindowEntry& e) { return e.index == index; });
    if (it == entries_.end()) {
        throw std::out_of_range("window has no entry " + std::to_string(index));
    }
    return it->value;
}

// ------------------------------------------------------------ operations

QuadReal alpha_at(const SolenoidSpec& spec, std::size_t n) {
    const Rat scale(ipow(Int(spec.p), n));
    return (spec.theta + QuadReal(Rat(spec.digits.partial_sum(n)))) / QuadReal(scale);
}

SeqWindow reduce_h(const SolenoidSpec& spec, std::size_t N) {
    SeqWindow out;
    for (std::size_t n = 0; n <= N; ++n) {
        out.push(static_cast<long>(n), alpha_at(spec, n).frac());
    }
    return out;
}

SeqWindow alpha_window(const SolenoidSpec& spec, std::size_t N, bool even_only) {
    SeqWindow out;
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t idx = even_only ? 2 * n : n;
        out.push(static_cast<long>(idx), alpha_at(spec, idx));
    }
    return out;
}

bool CoherenceReport::ok() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const Pair& q) { return q.integral; });
}

std::vector<Int> CoherenceReport::integer_defects() const {
    std::vector<Int> out;
    for (const auto& q : pairs) {
        if (!q.integral) {
            throw CoherenceError("coherence violated between entries " + std::to_string(q.from) + " and " +
                                 std::to_string(q.to) + ": defect " + q.defect.str());
        }
        out.push_back(q.defect.floor());
    }
    return out;
}

CoherenceReport coherence_check(const SeqWindow& window, unsigned long p, unsigned step) {
    if (step != 1 && step != 2) {
        throw std::invalid_argument("coherence step must be 1 or 2");
    }
    const QuadReal scale(Rat(ipow(Int(p), step)));
    CoherenceReport report;
    const auto& e = window.entries();
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i + 1].index - e[i].index != static_cast<long>(step)) {
            throw std::invalid_argument("window entries " + std::to_string(e[i].index) + " and " +
                                        std::to_string(e[i + 1].index) + " are not " +
                                        std::to_string(step) + " apart");
        }
        QuadReal defect = scale * e[i + 1].value - e[i].value;
        const bool integral = defect.is_rational() && is_integer(defect.rational_part());
        report.pairs.push_back({e[i].index, e[i + 1].index, std::move(defect), integral});
    }
    return report;
}

namespace {

void validate_even_window(unsigned long p, const SeqWindow& even) {
    if (even.empty() || even.entries().front().index != 0) {
        throw std::invalid_argument("even window must start at index 0");
    }
    for (const auto& e : even.entries()) {
        if (e.value < QuadReal(0) || e.value >= QuadReal(1)) {
            throw std::invalid_argument("even window entry " + std::to_string(e.index) + " = " + e.value.str() +
                                        " is not in [0, 1)");
        }
    }
    const auto report = coherence_check(even, p, 2);
    if (!report.ok()) {
        report.integer_defects();  // throws with the first offending pair
    }
}

}  // namespace

SeqWindow fill_odd_entries(unsigned long p, const SeqWindow& even) {
    validate_even_window(p, even);
    SeqWindow full;
    const auto& e = even.entries();
    const QuadReal pp(static_cast<long>(p));
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i > 0) {
            full.push(e[i].index - 1, (pp * e[i].value).frac());
        }
        full.push(e[i].index, e[i].value);
    }
    return full;
}

SolenoidSpec from_even_entries(unsigned long p, const SeqWindow& even) {
    const SeqWindow full = fill_odd_entries(p, even);
    const auto& e = full.entries();
    const QuadReal pp(static_cast<long>(p));
    Digits digits;
    for (std::size_t n = 0; n + 1 < e.size(); ++n) {
        const QuadReal x = pp * e[n + 1].value - e[n].value;
        if (!x.is_rational() || !is_integer(x.rational_part())) {
            throw CoherenceError("non-integer digit at index " + std::to_string(n));
        }
        digits.push_back(x.rational_part().get_num().get_ui());
    }
    return SolenoidSpec(p, e.front().value, DigitStream::finite(p, std::move(digits)));
}

std::optional<std::size_t> first_xi_mismatch(const SolenoidSpec& a, const SolenoidSpec& b, std::size_t N) {
    if (a.p != b.p) {
        throw std::invalid_argument("equal_in_xi: prime mismatch (" + std::to_string(a.p) + " vs " +
                                    std::to_string(b.p) + ")");
    }
    for (std::size_t n = 0; n <= N; ++n) {
        if (alpha_at(a, n).frac() != alpha_at(b, n).frac()) {
            return n;
        }
    }
    return std::nullopt;
}

bool equal_in_xi(const SolenoidSpec& a, const SolenoidSpec& b, std::size_t N) {
    return !first_xi_mismatch(a, b, N).has_value();
}

SolenoidSpec truncate_front(const SolenoidSpec& spec, std::size_t k) {
    return SolenoidSpec(spec.p, alpha_at(spec, k), spec.digits.shifted(k));
}

SolenoidSpec negate_spec(const SolenoidSpec& spec) {
    return SolenoidSpec(spec.p, -spec.theta, spec.digits.negated());
}

}  // namespace nsol
