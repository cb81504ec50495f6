#pragma once

// Parameter sequences alpha in Omega_p, stored as (theta, digit stream) with
// alpha_n = (theta + sum_{j<n} x_j p^j) / p^n.

#include "nsol/exactnum.hpp"
#include "nsol/padic.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace nsol {

class CoherenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Digits x_0, x_1, ... of x_alpha: either the expansion of a rational p-adic
/// integer or an explicit finite prefix whose continuation is unknown.
class DigitStream {
public:
    DigitStream() : padic_(PAdic(2)) {}
    static DigitStream periodic(const PAdic& x);
    static DigitStream finite(unsigned long p, Digits prefix);

    unsigned long prime() const { return p_; }
    /// nullopt when every digit is known.
    std::optional<std::size_t> known_length() const;
    const std::optional<PAdic>& padic() const { return padic_; }
    const Digits& prefix() const { return prefix_; }

    /// x_n; PrecisionError past the end of a finite prefix.
    unsigned long at(std::size_t n) const;
    /// sum_{j<n} x_j p^j.
    Int partial_sum(std::size_t n) const;
    /// Digits x_k, x_{k+1}, ...
    DigitStream shifted(std::size_t k) const;
    /// Digits of -x_alpha (same known length).
    DigitStream negated() const;

private:
    unsigned long p_ = 2;
    std::optional<PAdic> padic_;
    Digits prefix_;
};

struct SolenoidSpec {
    unsigned long p = 2;
    QuadReal theta;
    DigitStream digits;

    SolenoidSpec() = default;
    SolenoidSpec(unsigned long prime, QuadReal theta_value, DigitStream stream);
    /// Convenience: digits of the rational p-adic integer x.
    SolenoidSpec(unsigned long prime, QuadReal theta_value, const Rat& x);
};

struct WindowEntry {
    long index;
    QuadReal value;
    friend bool operator==(const WindowEntry&, const WindowEntry&) = default;
};

/// Finitely many entries of a sequence, indices strictly increasing.
class SeqWindow {
public:
    SeqWindow() = default;
    explicit SeqWindow(std::vector<WindowEntry> entries);

    void push(long index, QuadReal value);
    const std::vector<WindowEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const QuadReal& at_index(long index) const;
    friend bool operator==(const SeqWindow&, const SeqWindow&) = default;

private:
    std::vector<WindowEntry> entries_;
};

QuadReal alpha_at(const SolenoidSpec& spec, std::size_t n);

/// Entries alpha_n mod 1 for n = 0..N.
SeqWindow reduce_h(const SolenoidSpec& spec, std::size_t N);

/// Entries alpha_n (unreduced) for n = 0..N, or only even n when even_only.
SeqWindow alpha_window(const SolenoidSpec& spec, std::size_t N, bool even_only = false);

struct CoherenceReport {
    struct Pair {
        long from;
        long to;
        QuadReal defect;  // p^step * w_to - w_from
        bool integral;
    };
    std::vector<Pair> pairs;

    bool ok() const;
    std::vector<Int> integer_defects() const;  // throws CoherenceError if !ok()
};

/// p^step * w_{n+step} - w_n for adjacent entries; step must match the index gaps.
CoherenceReport coherence_check(const SeqWindow& window, unsigned long p, unsigned step);

/// Rebuilds a Xi_p spec from the entries 0, 2, ..., 2N (all in [0, 1)). The
/// recovered digit stream has known length 2N.
SolenoidSpec from_even_entries(unsigned long p, const SeqWindow& even);

/// The full window 0..2N that from_even_entries interpolates.
SeqWindow fill_odd_entries(unsigned long p, const SeqWindow& even);

/// h(a) and h(b) agree at every index <= N. A necessary condition only.
bool equal_in_xi(const SolenoidSpec& a, const SolenoidSpec& b, std::size_t N);

/// First index <= N where h(a) and h(b) differ.
std::optional<std::size_t> first_xi_mismatch(const SolenoidSpec& a, const SolenoidSpec& b, std::size_t N);

/// alpha_{n+k} as a spec (drops the first k entries).
SolenoidSpec truncate_front(const SolenoidSpec& spec, std::size_t k);

/// A spec representing -alpha up to integer changes of entries.
SolenoidSpec negate_spec(const SolenoidSpec& spec);

}  // namespace nsol
