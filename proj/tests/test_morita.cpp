#include "nsol/morita.hpp"

#include <doctest.h>

#include <random>

using namespace nsol;

namespace {

QuadReal Q(const char* s) { return QuadReal::parse(s); }

const QuadReal kTheta = QuadReal::parse("(-1+1*sqrt(2))/1");
const SolenoidSpec kSpec(2, kTheta, Rat(1));

QuadReal qi(long v) { return QuadReal(v); }

}  // namespace

TEST_CASE("condition_check examples") {
    CHECK(condition_check(2, ProjectionData{1, 1, 0}, 1));
    CHECK_FALSE(condition_check(2, ProjectionData{1, 1, 0}, 0));
    CHECK(condition_check(3, ProjectionData{1, 2, 3}, 1));
}

TEST_CASE("projection data validation") {
    CHECK_NOTHROW(ProjectionData{1, 1, 0}.validate(kTheta));
    CHECK_THROWS(ProjectionData{1, 0, 0}.validate(kTheta));
    CHECK_THROWS(ProjectionData{0, 1, 0}.validate(kTheta));
    CHECK_THROWS(ProjectionData{1, 1, 1}.validate(kTheta));   // trace sqrt 2 >= m
    CHECK_THROWS(ProjectionData{1, -1, 0}.validate(kTheta));  // negative trace
}

TEST_CASE("trace_line") {
    const TraceLine l0 = trace_line(kSpec, ProjectionData{1, 1, 0}, 0);
    CHECK(l0.c2n == 1);
    CHECK(l0.d2n == 0);
    const TraceLine l1 = trace_line(kSpec, ProjectionData{1, 1, 0}, 1);
    CHECK(l1.c2n == 4);
    CHECK(l1.d2n == -1);
}

TEST_CASE("trace lines stay coprime when the condition holds") {
    std::mt19937_64 g(51);
    int tested = 0;
    while (tested < 60) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5, 7}[g() % 4];
        const Rat x(Int(static_cast<long>(g() % 50) + 1), Int(static_cast<long>(g() % 7) * static_cast<long>(p) + 1));
        const SolenoidSpec s(p, kTheta, x);
        const ProjectionData proj{3, static_cast<long>(g() % 3) + 1, static_cast<long>(g() % 3)};
        if (!condition_check(p, proj, s.digits.at(0))) {
            continue;
        }
        ++tested;
        CHECK_FALSE(coprimality_witness(s, proj, 50).has_value());
    }
    // and the converse finds a witness
    const SolenoidSpec zero_digit(2, kTheta, Rat(2));
    const auto w = coprimality_witness(zero_digit, ProjectionData{1, 1, 0}, 10);
    REQUIRE(w.has_value());
    CHECK(w->n == 1);
}

TEST_CASE("ab_normalized examples") {
    const MobiusPair a = ab_normalized(TraceLine{0, 1, 0}, kTheta);
    CHECK(a.b == -1);
    CHECK(a.a == 3);
    CHECK(a.det() == 1);
    CHECK(a.apply(kTheta) == Q("(2-1*sqrt(2))/1"));

    const MobiusPair b = ab_normalized(TraceLine{0, 1, 1}, kTheta);
    CHECK(b.a == 1);
    CHECK(b.b == 0);
    CHECK(b.apply(kTheta) == kTheta / (kTheta + 1));

    const MobiusPair c = ab_normalized(TraceLine{0, 2, 1}, kTheta);
    CHECK(c.det() == 1);
    CHECK(c.apply(kTheta) >= qi(0));
    CHECK(c.apply(kTheta) < qi(1));

    CHECK_THROWS_AS(ab_normalized(TraceLine{0, 4, 2}, kTheta), ConditionError);
}

TEST_CASE("projection_partner") {
    const ProjectionData proj{1, 1, 0};
    const SeqWindow w = projection_partner(kSpec, proj, 3);
    CHECK(w.size() == 4);
    CHECK(coherence_check(w, 2, 2).ok());
    const SolenoidSpec heis = heisenberg_partner_spec(kSpec);
    const SolenoidSpec back = from_even_entries(2, w);
    CHECK(equal_in_xi(back, negate_spec(heis), 6));

    CHECK_THROWS_AS(projection_partner(SolenoidSpec(2, kTheta, Rat(2)), proj, 3), ConditionError);
}

TEST_CASE("inverse projection recovers the original") {
    std::mt19937_64 g(52);
    for (int i = 0; i < 20; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5}[g() % 3];
        const SolenoidSpec s(p, kTheta, Rat(static_cast<long>(g() % (p - 1)) + 1));
        const ProjectionData proj{1, 1, 0};
        const SolenoidSpec beta = from_even_entries(p, projection_partner(s, proj, 6));
        const ProjectionData inv = inverse_projection(s, proj);
        const SolenoidSpec back = from_even_entries(p, projection_partner(beta, inv, 5));
        CHECK(equal_in_xi(back, s, 10));
    }
}

TEST_CASE("heisenberg_partner examples") {
    const SeqWindow w = heisenberg_partner(kSpec, 2);
    const QuadReal s2 = Q("(1+1*sqrt(2))/1");
    CHECK(w.at_index(0) == s2);
    CHECK(w.at_index(1) == s2 / qi(2) + QuadReal(Rat(1, 2)));
    CHECK(w.at_index(2) == s2 / qi(4) + QuadReal(Rat(1, 4)));
    CHECK(coherence_check(w, 2, 1).ok());

    CHECK_THROWS_AS(heisenberg_partner(SolenoidSpec(2, kTheta, Rat(0)), 2), std::invalid_argument);
    CHECK_THROWS_AS(heisenberg_partner(SolenoidSpec(2, QuadReal(0), Rat(1)), 2), std::invalid_argument);

    // p = 5, x = 2: y = 1/2 = 3 + 2*5 + ..., so beta_1 = (1/theta + 3) / 5
    const SeqWindow w5 = heisenberg_partner(SolenoidSpec(5, kTheta, Rat(2)), 1);
    CHECK(w5.at_index(1) == (qi(1) / kTheta + qi(3)) / qi(5));
}

TEST_CASE("heisenberg window and spec agree") {
    std::mt19937_64 g(53);
    for (int i = 0; i < 20; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5, 7}[g() % 4];
        Rat x(Int(static_cast<long>(g() % 40) + 1), Int(static_cast<long>(g() % 20) + 1));
        x.canonicalize();
        if (x.get_den() % p == 0) {
            continue;
        }
        const SolenoidSpec s(p, kTheta + qi(static_cast<long>(g() % 3)), x);
        const SeqWindow w = heisenberg_partner(s, 12);
        const SolenoidSpec spec = heisenberg_partner_spec(s);
        for (const auto& e : w.entries()) {
            CHECK((e.value - alpha_at(spec, static_cast<std::size_t>(e.index))).frac().is_zero());
        }
    }
}

TEST_CASE("heisenberg partner is an involution mod 1") {
    std::mt19937_64 g(54);
    for (int i = 0; i < 20; ++i) {
        const unsigned long p = std::vector<unsigned long>{2, 3, 5}[g() % 3];
        Rat x(Int(static_cast<long>(g() % 40) + 1), Int(static_cast<long>(g() % 20) + 1));
        x.canonicalize();
        // units only: x = p u would leave the partner with zero digits
        if (x.get_den() % p == 0 || x.get_num() % p == 0) {
            continue;
        }
        const SolenoidSpec s(p, kTheta + qi(1), x);
        CHECK(equal_in_xi(heisenberg_partner_spec(heisenberg_partner_spec(s)), s, 10));
    }
}

TEST_CASE("relate") {
    CHECK(relate_check(kSpec, 5));
    const RelateReport rep = relate_report(kSpec, 5);
    REQUIRE(rep.levels.size() == 6);
    const MobiusPair& m0 = rep.levels.front().displayed;
    CHECK(m0.a == 0);
    CHECK(m0.b == 1);
    CHECK(m0.c == 1);
    CHECK(m0.d == 0);
    CHECK(rep.levels.front().beta_displayed == qi(1) / kTheta);
    CHECK(rep.exact_agreement());
    CHECK(rep.determinants() == std::vector<Int>{-1});
    for (const auto& l : rep.levels) {
        CHECK(l.b_integral);
        CHECK(l.normalized_matches_negated_heisenberg_mod1);
    }
    CHECK_THROWS(relate_report(SolenoidSpec(2, kTheta, Rat(2)), 3));
}

TEST_CASE("certificate_search") {
    const SolenoidSpec b3(3, kTheta, Rat(1));
    const SearchResult imp = certificate_search(kSpec, b3, SearchBounds{});
    CHECK(std::holds_alternative<Impossible>(imp));

    const SearchBounds bounds{4, 4, 4, 4};
    const SolenoidSpec partner = from_even_entries(2, projection_partner(kSpec, ProjectionData{1, 1, 0}, bounds.entries));
    const SearchResult found = certificate_search(kSpec, partner, bounds);
    REQUIRE(std::holds_alternative<Certificate>(found));
    const Certificate& c = std::get<Certificate>(found);
    CHECK(c.proj.c0 == 1);
    CHECK(c.proj.d0 == 0);
    CHECK(c.k == 0);

    const SolenoidSpec unrelated(2, Q("1/3"), Rat(1));
    CHECK(std::holds_alternative<Inconclusive>(certificate_search(kSpec, unrelated, SearchBounds{2, 2, 2, 3})));
}
