#pragma once

// Phase arithmetic for the 2-cocycles on Gamma = Z[1/p]^2 and on the
// Heisenberg lattice [Q_p x R]^2. A phase e^{2 pi i t} is stored as its
// argument t reduced to [0, 1).

#include "nsol/exactnum.hpp"
#include "nsol/padic.hpp"
#include "nsol/solenoid.hpp"

#include <functional>

namespace nsol {

struct GammaElem {
    PFrac first;
    PFrac second;

    static GammaElem zero(unsigned long p) { return {PFrac(p, 0), PFrac(p, 0)}; }
    friend GammaElem operator+(const GammaElem& a, const GammaElem& b) {
        return {a.first + b.first, a.second + b.second};
    }
    friend bool operator==(const GammaElem&, const GammaElem&) = default;
};

/// Argument of a unimodular phase, kept in [0, 1).
class PhaseArg {
public:
    PhaseArg() = default;
    explicit PhaseArg(const QuadReal& t) : value_(t.frac()) {}

    const QuadReal& value() const { return value_; }
    bool is_trivial() const { return value_.is_zero(); }

    friend PhaseArg operator+(const PhaseArg& a, const PhaseArg& b) { return PhaseArg(a.value_ + b.value_); }
    friend PhaseArg operator-(const PhaseArg& a, const PhaseArg& b) { return PhaseArg(a.value_ - b.value_); }
    PhaseArg operator-() const { return PhaseArg(-value_); }
    friend bool operator==(const PhaseArg&, const PhaseArg&) = default;

private:
    QuadReal value_;
};

/// A point (q, r) of M = Q_p x R.
struct MPoint {
    PAdic q;
    QuadReal r;
};

/// A point [(q1, r1), (q2, r2)] of M x M^.
struct LatticePoint {
    MPoint first;
    MPoint second;
};

using PhaseMap = std::function<PhaseArg(const GammaElem&, const GammaElem&)>;

/// Psi_alpha((j1/p^k1, j2/p^k2), (j3/p^k3, j4/p^k4)) = alpha_{k1+k4} j1 j4 mod 1.
PhaseArg psi_alpha(const SolenoidSpec& spec, const GammaElem& g, const GammaElem& h);

/// arg s(r,s) + arg s(r+s,t) - arg s(r,s+t) - arg s(s,t); zero for a multiplier.
PhaseArg cocycle_defect(const PhaseMap& sigma, const GammaElem& r, const GammaElem& s, const GammaElem& t);

/// iota_{x,theta}(r1, r2) = [(x r1, theta r1), (r2, r2)].
LatticePoint iota_embed(const PAdic& x, const QuadReal& theta, const GammaElem& g);

/// lambda_{x,theta}(s1, s2) = [(s1, -s1), (-x^{-1} s2, s2/theta)].
LatticePoint lambda_embed(const PAdic& x, const QuadReal& theta, const GammaElem& s);

/// Heisenberg multiplier: r1 r4 + {q1 q4}_p mod 1.
PhaseArg eta(const LatticePoint& a, const LatticePoint& b);

/// Conjugate Heisenberg multiplier.
PhaseArg eta_bar(const LatticePoint& a, const LatticePoint& b);

/// Symmetrized multiplier: eta(a, b) - eta(b, a) mod 1.
PhaseArg rho(const LatticePoint& a, const LatticePoint& b);

}  // namespace nsol
