#include "nsol/exactnum.hpp"

#include <doctest.h>

#include <random>

using namespace nsol;

namespace {

QuadReal Q(const char* s) { return QuadReal::parse(s); }

QuadReal random_quad(std::mt19937_64& g, unsigned long D) {
    auto r = [&] {
        Rat q(Int(static_cast<long>(g() % 41) - 20), Int(static_cast<long>(g() % 9) + 1));
        q.canonicalize();
        return q;
    };
    return QuadReal(r(), r(), D);
}

// floor via 512-bit floating point, away from integer boundaries
Int mpf_floor(const QuadReal& x) {
    mpf_class root(x.radicand() == 0 ? 0 : x.radicand(), 512);
    mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
    mpf_class v(mpf_class(x.rational_part(), 512) + mpf_class(x.surd_coefficient(), 512) * root, 512);
    mpf_floor(v.get_mpf_t(), v.get_mpf_t());
    return Int(v);
}

}  // namespace

TEST_CASE("quadratic field arithmetic examples") {
    CHECK(Q("(-1+1*sqrt(2))/1") * Q("(1+1*sqrt(2))/1") == QuadReal(1));
    CHECK(QuadReal(1) / Q("(-1+1*sqrt(2))/1") == Q("(1+1*sqrt(2))/1"));
    const QuadReal phi = Q("(1+1*sqrt(5))/2");
    CHECK(phi * phi - phi == QuadReal(1));
}

TEST_CASE("quadratic field errors") {
    CHECK_THROWS_AS(Q("(0+1*sqrt(2))/1") + Q("(0+1*sqrt(3))/1"), RadicandMismatch);
    CHECK_THROWS(Q("(1+1*sqrt(2))/1") / QuadReal(0));
    // a rational combines with any radicand
    CHECK((QuadReal(Rat(1, 2)) + Q("(0+1*sqrt(3))/1")).radicand() == 3);
}

TEST_CASE("parse and print") {
    CHECK(Q("(−1+1*sqrt(2))/1") == Q("(-1+1*sqrt(2))/1"));
    CHECK(Q("(-1+1*sqrt(2))/1").str() == "(-1 + 1*sqrt(2))/1");
    CHECK(Q("(3 - 2*sqrt(5))/4").str() == "(3 - 2*sqrt(5))/4");
    CHECK(Q("7/2") == QuadReal(Rat(7, 2)));
    CHECK_THROWS(Q("(2+2*sqrt(8))/1"));  // radicand must be square-free
    const QuadReal x = Q("(5 - 3*sqrt(7))/6");
    CHECK(QuadReal::parse(x.str()) == x);
    CHECK_THROWS(Q("(1+sqrt)/2"));
}

TEST_CASE("floor examples") {
    CHECK(Q("(1+1*sqrt(2))/1").floor() == 2);
    CHECK(Q("7/2").floor() == 3);
    CHECK((-Q("(-1+1*sqrt(2))/1")).floor() == -1);
    CHECK(Q("-7/2").floor() == -4);
}

TEST_CASE("ordering by signed squaring") {
    CHECK(Q("(0+1*sqrt(2))/1") < Q("3/2"));
    CHECK(Q("(0+1*sqrt(2))/1") > Q("7/5"));
    CHECK(Q("(0-1*sqrt(2))/1") < Q("-7/5"));
    CHECK(sign_of(Rat(-3), Rat(2), 2) == -1);  // 2 sqrt 2 < 3
    CHECK(sign_of(Rat(-2), Rat(2), 2) == 1);
}

TEST_CASE("ext_gcd") {
    const Bezout a = ext_gcd(4, -1);
    CHECK(a.g == 1);
    CHECK(a.s * 4 + a.t * -1 == 1);
    CHECK(ext_gcd(6, 1).g == 1);
    CHECK(ext_gcd(2, 0).g == 2);
    CHECK(ext_gcd(-2, 0).g == 2);
    CHECK_THROWS(ext_gcd(0, 0));
}

TEST_CASE("PFrac canonical form") {
    CHECK(PFrac(2, 4, 3).str() == "1/2^1");
    CHECK(PFrac(2, 4, 3) == PFrac(2, 1, 1));
    CHECK(PFrac(3, 9, 2).str() == "1");
    for (const char* s : {"5/3^4", "-7/3^1", "12", "0"}) {
        const PFrac f = PFrac::parse(3, s);
        CHECK(PFrac::parse(3, f.str()) == f);
    }
    CHECK(PFrac::parse(2, "3/8") == PFrac(2, 3, 3));
    CHECK_THROWS(PFrac::parse(2, "1/3"));
    CHECK(PFrac(5, 2, 1) + PFrac(5, 3, 1) == PFrac(5, 1, 0));
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 g(11);
    for (unsigned long D : {2UL, 3UL, 5UL, 7UL}) {
        for (int i = 0; i < 200; ++i) {
            const QuadReal x = random_quad(g, D), y = random_quad(g, D), z = random_quad(g, D);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            if (!y.is_zero()) {
                CHECK((x / y) * y == x);
            }
        }
    }
}

TEST_CASE("floor brackets the value and agrees with a 512-bit oracle") {
    std::mt19937_64 g(12);
    for (unsigned long D : {2UL, 3UL, 6UL, 10UL}) {
        for (int i = 0; i < 300; ++i) {
            const QuadReal x = random_quad(g, D);
            const Int f = x.floor();
            CHECK(QuadReal(Rat(f)) <= x);
            CHECK(x < QuadReal(Rat(f + 1)));
            if (!x.is_rational()) {
                CHECK(f == mpf_floor(x));
            }
        }
    }
}

TEST_CASE("helpers") {
    CHECK(valuation(Int(48), 2) == 4);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
    CHECK(is_squarefree(10));
    CHECK_FALSE(is_squarefree(12));
    CHECK(frac_rat(Rat(-1, 3)) == Rat(2, 3));
    CHECK(parse_rat("-6/4") == Rat(-3, 2));
}
