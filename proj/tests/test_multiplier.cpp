#include "nsol/multiplier.hpp"

#include <doctest.h>

#include <random>

using namespace nsol;

namespace {

const QuadReal kTheta = QuadReal::parse("(-1+1*sqrt(2))/1");

GammaElem G(unsigned long p, long j1, unsigned k1, long j2, unsigned k2) {
    return {PFrac(p, j1, k1), PFrac(p, j2, k2)};
}

GammaElem random_gamma(std::mt19937_64& g, unsigned long p) {
    return G(p, static_cast<long>(g() % 41) - 20, g() % 5, static_cast<long>(g() % 41) - 20, g() % 5);
}

}  // namespace

TEST_CASE("psi_alpha examples") {
    const SolenoidSpec s(2, kTheta, Rat(1));
    CHECK(psi_alpha(s, G(2, 1, 0, 0, 0), G(2, 0, 0, 1, 0)).value() == kTheta);
    CHECK(psi_alpha(s, G(2, 3, 1, 5, 2), GammaElem::zero(2)).is_trivial());
    CHECK(psi_alpha(s, GammaElem::zero(2), G(2, 3, 1, 5, 2)).is_trivial());
    CHECK(psi_alpha(s, G(2, 1, 1, 0, 0), G(2, 0, 0, 1, 1)).value() == QuadReal::parse("(0+1*sqrt(2))/4"));
}

TEST_CASE("psi_alpha is a 2-cocycle") {
    std::mt19937_64 g(41);
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        const SolenoidSpec s(p, kTheta, Rat(2, 7));
        const PhaseMap psi = [&](const GammaElem& a, const GammaElem& b) { return psi_alpha(s, a, b); };
        for (int i = 0; i < 150; ++i) {
            CHECK(cocycle_defect(psi, random_gamma(g, p), random_gamma(g, p), random_gamma(g, p)).is_trivial());
        }
    }
}

TEST_CASE("cocycle_defect detects perturbations") {
    const PhaseMap trivial = [](const GammaElem&, const GammaElem&) { return PhaseArg(); };
    const GammaElem r = G(2, 1, 0, 0, 0), s = G(2, 0, 0, 1, 0), t = G(2, 1, 1, 1, 1);
    CHECK(cocycle_defect(trivial, r, s, t).is_trivial());

    const SolenoidSpec spec(2, kTheta, Rat(1));
    const QuadReal eps(Rat(1, 10));
    const PhaseMap bent = [&](const GammaElem& a, const GammaElem& b) {
        PhaseArg v = psi_alpha(spec, a, b);
        return a == r && b == s ? v + PhaseArg(eps) : v;
    };
    CHECK(cocycle_defect(bent, r, s, t).value() == eps);
}

TEST_CASE("iota and lambda embeddings") {
    const PAdic one = PAdic::from_rational(2, 1);
    const LatticePoint z = iota_embed(one, kTheta, GammaElem::zero(2));
    CHECK(z.first.q.is_zero());
    CHECK(z.first.r.is_zero());
    CHECK(z.second.q.is_zero());
    CHECK(z.second.r.is_zero());

    const LatticePoint a = iota_embed(one, kTheta, G(2, 1, 0, 0, 0));
    CHECK(a.first.q == one);
    CHECK(a.first.r == kTheta);
    CHECK(a.second.q.is_zero());

    const PAdic three = PAdic::from_rational(2, 3);
    const LatticePoint b = iota_embed(three, kTheta, G(2, 1, 1, 1, 0));
    CHECK(b.first.q == PAdic::from_rational(2, Rat(3, 2)));
    CHECK(b.first.r == kTheta / QuadReal(2));
    CHECK(b.second.q == one);
    CHECK(b.second.r == QuadReal(1));

    const LatticePoint l = lambda_embed(one, kTheta, G(2, 0, 0, 1, 0));
    CHECK(l.first.q.is_zero());
    CHECK(l.second.q == PAdic::from_rational(2, -1));
    CHECK(l.second.r == QuadReal(1) / kTheta);

    const LatticePoint l5 = lambda_embed(PAdic::from_rational(5, 2), kTheta, G(5, 0, 0, 1, 0));
    CHECK(l5.second.q == -PAdic::from_rational(5, 2).invert());
}

TEST_CASE("eta examples") {
    const PAdic x = PAdic::from_rational(2, 5);
    const LatticePoint P = iota_embed(x, kTheta, G(2, 3, 1, 1, 2));
    CHECK(eta(P, iota_embed(x, kTheta, GammaElem::zero(2))).is_trivial());
    CHECK(eta(iota_embed(x, kTheta, G(2, 1, 0, 0, 0)), iota_embed(x, kTheta, G(2, 0, 0, 1, 0))).value() == kTheta);

    // conjugate multiplier on the lambda image
    const PAdic xi = x.invert();
    std::mt19937_64 g(42);
    for (int i = 0; i < 50; ++i) {
        const GammaElem s = random_gamma(g, 2), t = random_gamma(g, 2);
        const QuadReal s1s4(s.first.to_rat() * t.second.to_rat());
        const QuadReal want = QuadReal(1) / kTheta * s1s4 + QuadReal((xi * (s.first * t.second)).frac_part().to_rat());
        CHECK(eta_bar(lambda_embed(x, kTheta, s), lambda_embed(x, kTheta, t)) == PhaseArg(want));
    }
}

TEST_CASE("rho vanishes on the annihilator pairing") {
    std::mt19937_64 g(43);
    for (unsigned long p : {2UL, 3UL, 7UL}) {
        const PAdic x = PAdic::from_rational(p, Rat(4, 11));
        for (int i = 0; i < 60; ++i) {
            const LatticePoint P = iota_embed(x, kTheta, random_gamma(g, p));
            const LatticePoint L = lambda_embed(x, kTheta, random_gamma(g, p));
            CHECK(rho(P, L).is_trivial());
            CHECK(rho(P, P).is_trivial());
        }
    }
    const PAdic x = PAdic::from_rational(2, 1);
    CHECK_FALSE(rho(iota_embed(x, kTheta, G(2, 1, 0, 0, 0)), iota_embed(x, kTheta, G(2, 0, 0, 1, 0))).is_trivial());
}
