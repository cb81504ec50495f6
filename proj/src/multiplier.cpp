#include "nsol/multiplier.hpp"

namespace nsol {

namespace {

PAdic as_padic(const PFrac& s) { return PAdic::from_rational(s.prime(), s.to_rat()); }

QuadReal as_real(const PFrac& s) { return QuadReal(s.to_rat()); }

void check_nonzero(const PAdic& x, const QuadReal& theta) {
    if (x.is_zero()) {
        throw std::invalid_argument("lattice embedding needs x != 0");
    }
    if (theta.is_zero()) {
        throw std::invalid_argument("lattice embedding needs theta != 0");
    }
}

}  // namespace

PhaseArg psi_alpha(const SolenoidSpec& spec, const GammaElem& g, const GammaElem& h) {
    if (g.first.prime() != spec.p || h.second.prime() != spec.p) {
        throw std::invalid_argument("psi_alpha: group element prime differs from the spec");
    }
    const std::size_t level = g.first.exponent() + h.second.exponent();
    const Rat jj(g.first.numerator() * h.second.numerator());
    return PhaseArg(alpha_at(spec, level) * QuadReal(jj));
}

PhaseArg cocycle_defect(const PhaseMap& sigma, const GammaElem& r, const GammaElem& s, const GammaElem& t) {
    return sigma(r, s) + sigma(r + s, t) - sigma(r, s + t) - sigma(s, t);
}

LatticePoint iota_embed(const PAdic& x, const QuadReal& theta, const GammaElem& g) {
    check_nonzero(x, theta);
    return {{x * g.first, theta * as_real(g.first)}, {as_padic(g.second), as_real(g.second)}};
}

LatticePoint lambda_embed(const PAdic& x, const QuadReal& theta, const GammaElem& s) {
    check_nonzero(x, theta);
    return {{as_padic(s.first), -as_real(s.first)}, {-(x.invert() * s.second), as_real(s.second) / theta}};
}

PhaseArg eta(const LatticePoint& a, const LatticePoint& b) {
    const PAdic qq = a.first.q * b.second.q;
    return PhaseArg(a.first.r * b.second.r + QuadReal(qq.frac_part().to_rat()));
}

PhaseArg eta_bar(const LatticePoint& a, const LatticePoint& b) { return -eta(a, b); }

PhaseArg rho(const LatticePoint& a, const LatticePoint& b) { return eta(a, b) - eta(b, a); }

}  // namespace nsol
