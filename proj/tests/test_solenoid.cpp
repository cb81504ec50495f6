#include "nsol/solenoid.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace nsol;

namespace {

QuadReal Q(const char* s) { return QuadReal::parse(s); }

const QuadReal kTheta = QuadReal::parse("(-1+1*sqrt(2))/1");

SolenoidSpec random_spec(std::mt19937_64& g, unsigned long p) {
    const Rat a(Int(static_cast<long>(g() % 21) - 10), Int(static_cast<long>(g() % 5) + 1));
    const Rat b(Int(static_cast<long>(g() % 7) + 1), Int(static_cast<long>(g() % 5) + 1));
    Int den = Int(static_cast<long>(g() % 30) + 1);
    while (den % p == 0) {
        den += 1;
    }
    Rat x(Int(static_cast<long>(g() % 201) - 100), den);
    x.canonicalize();
    return SolenoidSpec(p, QuadReal(a, b, 3), x);
}

}  // namespace

TEST_CASE("alpha_at examples") {
    const SolenoidSpec s(2, kTheta, Rat(1));
    CHECK(alpha_at(s, 0) == kTheta);
    CHECK(alpha_at(s, 2) == Q("(0+1*sqrt(2))/4"));
    CHECK(alpha_at(s, 2) == (kTheta + 1) / QuadReal(4));
    CHECK(alpha_at(SolenoidSpec(3, QuadReal(Rat(1, 2)), Rat(0)), 1) == QuadReal(Rat(1, 6)));
}

TEST_CASE("defining recursion p alpha_{n+1} = alpha_n + x_n") {
    std::mt19937_64 g(31);
    for (int i = 0; i < 40; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5}[g() % 3];
        const SolenoidSpec s = random_spec(g, p);
        for (std::size_t n = 0; n < 64; ++n) {
            const QuadReal lhs = QuadReal(static_cast<long>(p)) * alpha_at(s, n + 1);
            CHECK(lhs == alpha_at(s, n) + QuadReal(static_cast<long>(s.digits.at(n))));
        }
    }
}

TEST_CASE("reduce_h examples") {
    const SeqWindow w = reduce_h(SolenoidSpec(2, Q("(1+1*sqrt(2))/1"), Rat(1)), 3);
    CHECK(w.at_index(0) == kTheta);
    for (const auto& e : w.entries()) {
        CHECK(e.value >= QuadReal(0));
        CHECK(e.value < QuadReal(1));
    }
    // entries already in [0, 1) are unchanged
    const SolenoidSpec inside(2, kTheta, Rat(1));
    CHECK(reduce_h(inside, 6) == alpha_window(inside, 6));
    // negative entry
    const SeqWindow neg = reduce_h(SolenoidSpec(2, -kTheta, Rat(0)), 0);
    CHECK(neg.at_index(0) == Q("(2-1*sqrt(2))/1"));
}

TEST_CASE("reduce_h is a homomorphism") {
    std::mt19937_64 g(32);
    for (int i = 0; i < 30; ++i) {
        const SolenoidSpec a = random_spec(g, 3), b = random_spec(g, 3);
        const SolenoidSpec sum(3, a.theta + b.theta, a.digits.padic()->value() + b.digits.padic()->value());
        const SeqWindow ha = reduce_h(a, 12), hb = reduce_h(b, 12), hs = reduce_h(sum, 12);
        for (std::size_t n = 0; n <= 12; ++n) {
            CHECK((ha.entries()[n].value + hb.entries()[n].value).frac() == hs.entries()[n].value);
        }
    }
}

TEST_CASE("coherence_check examples") {
    const SolenoidSpec s(2, kTheta, Rat(1));
    const CoherenceReport even = coherence_check(alpha_window(s, 8, true), 2, 2);
    CHECK(even.ok());
    const std::vector<Int> defects = even.integer_defects();
    REQUIRE(defects.size() >= 2);
    CHECK(defects.front() == 1);  // x_0 + p x_1
    CHECK(std::all_of(defects.begin() + 1, defects.end(), [](const Int& d) { return d == 0; }));
    CHECK(coherence_check(alpha_window(s, 8), 2, 1).ok());

    SeqWindow zeros;
    for (long i = 0; i <= 6; i += 2) {
        zeros.push(i, QuadReal(0));
    }
    CHECK(coherence_check(zeros, 2, 2).integer_defects() == std::vector<Int>(3, Int(0)));

    SeqWindow bad = alpha_window(s, 6, true);
    SeqWindow perturbed;
    for (const auto& e : bad.entries()) {
        perturbed.push(e.index, e.index == 0 ? e.value + QuadReal(Rat(1, 2)) : e.value);
    }
    const CoherenceReport r = coherence_check(perturbed, 2, 2);
    CHECK_FALSE(r.ok());
    CHECK(r.pairs.front().from == 0);
    CHECK(r.pairs.front().to == 2);
    CHECK_FALSE(r.pairs.front().integral);
    CHECK_THROWS_AS(r.integer_defects(), CoherenceError);
}

TEST_CASE("from_even_entries examples") {
    SeqWindow even;
    even.push(0, kTheta);
    even.push(2, (kTheta + 1) / QuadReal(4));
    const SolenoidSpec s = from_even_entries(2, even);
    CHECK(alpha_at(s, 1) == (kTheta + 1) / QuadReal(2));
    CHECK(s.digits.at(0) == 1);
    CHECK(s.digits.at(1) == 0);
    CHECK(s.digits.known_length() == std::optional<std::size_t>(2));
    CHECK_THROWS_AS(s.digits.at(2), PrecisionError);
    CHECK(fill_odd_entries(2, even).at_index(1) == (kTheta + 1) / QuadReal(2));

    SeqWindow zeros;
    zeros.push(0, QuadReal(0));
    zeros.push(2, QuadReal(0));
    const SolenoidSpec z = from_even_entries(3, zeros);
    CHECK(z.theta.is_zero());
    CHECK(z.digits.at(0) == 0);
    CHECK(z.digits.at(1) == 0);

    SeqWindow incoherent;
    incoherent.push(0, kTheta);
    incoherent.push(2, kTheta);
    CHECK_THROWS_AS(from_even_entries(2, incoherent), CoherenceError);
}

TEST_CASE("even entries determine the Xi_p element") {
    std::mt19937_64 g(33);
    for (int i = 0; i < 20; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5}[g() % 3];
        SolenoidSpec s = random_spec(g, p);
        s.theta = s.theta.frac();  // a Xi_p element: every alpha_n in [0, 1)
        const SolenoidSpec back = from_even_entries(p, alpha_window(s, 10, true));
        CHECK(equal_in_xi(s, back, 10));
        for (std::size_t n = 0; n < 10; ++n) {
            CHECK(back.digits.at(n) == s.digits.at(n));
        }
    }
}

TEST_CASE("equal_in_xi") {
    const SolenoidSpec a(2, kTheta, Rat(1));
    // theta + 1 with digits of x - 1 shifts every entry by an integer
    const SolenoidSpec b(2, kTheta + 1, Rat(0));
    CHECK(equal_in_xi(a, b, 20));
    const SolenoidSpec c(2, kTheta + QuadReal(Rat(1, 2)), Rat(1));
    CHECK_FALSE(equal_in_xi(a, c, 5));
    CHECK(first_xi_mismatch(a, c, 5) == std::optional<std::size_t>(0));
    CHECK_FALSE(first_xi_mismatch(a, b, 5).has_value());
    CHECK_THROWS(equal_in_xi(a, SolenoidSpec(3, kTheta, Rat(1)), 3));
}

TEST_CASE("truncate_front and negate_spec") {
    std::mt19937_64 g(34);
    for (int i = 0; i < 20; ++i) {
        const SolenoidSpec s = random_spec(g, 5);
        const SolenoidSpec t = truncate_front(s, 3);
        const SolenoidSpec m = negate_spec(s);
        for (std::size_t n = 0; n < 10; ++n) {
            CHECK(alpha_at(t, n) == alpha_at(s, n + 3));
            CHECK((alpha_at(m, n) + alpha_at(s, n)).frac().is_zero());
        }
    }
}

TEST_CASE("digit streams") {
    const DigitStream f = DigitStream::finite(3, {2, 1, 0});
    CHECK(f.partial_sum(3) == 2 + 3);
    CHECK(f.shifted(1).at(0) == 1);
    CHECK_THROWS_AS(f.at(3), PrecisionError);
    const DigitStream n = DigitStream::periodic(PAdic::from_rational(3, 5)).negated();
    CHECK(n.partial_sum(6) + 5 == ipow(Int(3), 6));
}
