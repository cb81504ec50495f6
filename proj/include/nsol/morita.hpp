#pragma once

// Morita partners of a noncommutative solenoid: the Heisenberg-bimodule
// formula, the projection construction driven by a trace line c0*alpha0 + d0,
// their comparison, and a bounded certificate search.

#include "nsol/exactnum.hpp"
#include "nsol/padic.hpp"
#include "nsol/solenoid.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nsol {

/// Raised when a trace line violates gcd(c0 p, d0 - c0 x0) = 1.
class ConditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Trace data of a projection P in M_m(A_theta): tau(P) = c0 * theta + d0.
struct ProjectionData {
    Int m = 1;
    Int c0 = 1;
    Int d0 = 0;

    /// Checks c0 != 0, m >= 1 and 0 < c0 theta + d0 < m.
    void validate(const QuadReal& theta) const;
    QuadReal trace(const QuadReal& theta) const { return QuadReal(Rat(c0)) * theta + QuadReal(Rat(d0)); }
};

struct TraceLine {
    std::size_t n = 0;
    Int c2n;
    Int d2n;
};

/// Integer matrix [[a, b], [c, d]] acting by alpha -> (a alpha + b)/(c alpha + d).
struct MobiusPair {
    Int a, b, c, d;

    Int det() const { return a * d - b * c; }
    QuadReal apply(const QuadReal& alpha) const;
};

/// gcd(c0 p, d0 - c0 x0) == 1 with gcd(a, 0) = |a|.
bool condition_check(unsigned long p, const ProjectionData& proj, unsigned long x0);

/// c_{2n} = c0 p^{2n}, d_{2n} = d0 - c0 sum_{j<2n} x_j p^j.
TraceLine trace_line(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n);

/// The unique det = +1 completion with (a alpha + b)/(c alpha + d) in [0, 1).
MobiusPair ab_normalized(const TraceLine& line, const QuadReal& alpha2n);

/// First level n <= max_n whose trace line is not coprime, if any.
std::optional<TraceLine> coprimality_witness(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t max_n);

struct ProjectionStage {
    TraceLine line;
    MobiusPair mobius;
    QuadReal alpha;
    QuadReal beta;
};

/// Level-by-level data behind projection_partner.
std::vector<ProjectionStage> projection_stages(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t N);

/// Even window {2n -> beta_{2n}} for n <= N, each entry in [0, 1).
SeqWindow projection_partner(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t N);

/// The trace line over the partner whose construction returns alpha's class:
/// (c0', d0') = (-c0, a_0) with tau = 1/(c0 alpha0 + d0).
ProjectionData inverse_projection(const SolenoidSpec& spec, const ProjectionData& proj);

/// Heisenberg partner as a spec: theta' = 1/theta + {x^{-1}}_p, digits of x^{-1} - {x^{-1}}_p.
SolenoidSpec heisenberg_partner_spec(const SolenoidSpec& spec);

/// beta_n = 1/(theta p^n) + (sum_{j=-v}^{n-1} y_j p^j)/p^n for n <= N.
SeqWindow heisenberg_partner(const SolenoidSpec& spec, std::size_t N);

struct RelateLevel {
    std::size_t n;
    MobiusPair displayed;   // the closed-form a, b, c, d
    bool b_integral;
    QuadReal beta_displayed;
    QuadReal beta_heisenberg;
    bool exact_match;
    QuadReal beta_normalized;  // det = +1 normalization of the same trace line
    bool normalized_matches_heisenberg_mod1;
    bool normalized_matches_negated_heisenberg_mod1;
};

struct RelateReport {
    std::vector<RelateLevel> levels;

    bool exact_agreement() const;
    /// Every displayed determinant value that occurred.
    std::vector<Int> determinants() const;
    bool agrees_up_to_sign_mod1() const;
    bool ok() const { return exact_agreement() && agrees_up_to_sign_mod1(); }
};

/// Compares the projection construction (c0 = 1, d0 = 0) with the Heisenberg
/// formula for n <= N. Requires theta != 0 and x_0 != 0.
RelateReport relate_report(const SolenoidSpec& spec, std::size_t N);
bool relate_check(const SolenoidSpec& spec, std::size_t N);

struct SearchBounds {
    long max_c0 = 4;
    long max_d0 = 4;
    std::size_t max_k = 4;
    std::size_t entries = 4;  // levels compared; h agreement is checked at indices 0..2*entries
};

struct Certificate {
    ProjectionData proj;
    std::size_t k;
    std::size_t matched_entries;
};

struct Impossible {
    std::string reason;
};

struct Inconclusive {
    std::size_t candidates_tried;
};

using SearchResult = std::variant<Certificate, Impossible, Inconclusive>;

/// Bounded semidecision: Impossible when the primes differ (K_1 obstruction),
/// otherwise the first (k, c0, d0) in lexicographic order whose partner matches b.
SearchResult certificate_search(const SolenoidSpec& a, const SolenoidSpec& b, const SearchBounds& bounds);

}  // namespace nsol
