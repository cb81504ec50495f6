#include "nsol/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <vector>

namespace nsol {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) {
        throw std::domain_error("zero denominator");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Int floor_rat(const Rat& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

Rat frac_rat(const Rat& q) { return q - Rat(floor_rat(q)); }

bool is_integer(const Rat& q) { return q.get_den() == 1; }

Int ipow(const Int& base, unsigned long exp) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

std::string to_string(const Int& z) { return z.get_str(); }

std::string to_string(const Rat& q) { return q.get_str(); }

namespace {

std::string normalize_text(std::string_view text) {
    // Accepts the unicode minus sign as an ordinary '-'.
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else if (!std::isspace(c)) {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

Int parse_int(std::string_view s) {
    if (s.empty()) {
        throw std::invalid_argument("expected an integer");
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
    }
    for (std::size_t k = i; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
            throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
        }
    }
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return Int(digits, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
    const std::string s = normalize_text(text);
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int(s));
    }
    return make_rat(parse_int(std::string_view(s).substr(0, slash)),
                    parse_int(std::string_view(s).substr(slash + 1)));
}

long valuation(const Int& z, unsigned long p) {
    if (z == 0) {
        throw std::domain_error("valuation of zero");
    }
    Int w = z;
    long v = 0;
    while (mpz_divisible_ui_p(w.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), p);
        ++v;
    }
    return v;
}

bool is_prime(unsigned long n) {
    if (n < 2) {
        return false;
    }
    for (unsigned long f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

bool is_squarefree(unsigned long n) {
    if (n == 0) {
        return false;
    }
    for (unsigned long f = 2; f * f <= n; ++f) {
        if (n % (f * f) == 0) {
            return false;
        }
    }
    return true;
}

Bezout ext_gcd(const Int& u, const Int& v) {
    if (u == 0 && v == 0) {
        throw std::domain_error("ext_gcd(0, 0) is undefined");
    }
    Int old_r = u, r = v;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

// ---------------------------------------------------------------- PFrac

PFrac::PFrac(unsigned long p, Int j, unsigned long k) : p_(p), j_(std::move(j)), k_(k) {
    if (!is_prime(p)) {
        throw std::invalid_argument("PFrac: " + std::to_string(p) + " is not prime");
    }
    normalize();
}

void PFrac::normalize() {
    if (j_ == 0) {
        k_ = 0;
        return;
    }
    while (k_ > 0 && mpz_divisible_ui_p(j_.get_mpz_t(), p_) != 0) {
        mpz_divexact_ui(j_.get_mpz_t(), j_.get_mpz_t(), p_);
        --k_;
    }
}

PFrac PFrac::from_rat(unsigned long p, const Rat& q) {
    Int den = q.get_den();
    unsigned long k = 0;
    while (den != 1) {
        if (mpz_divisible_ui_p(den.get_mpz_t(), p) == 0) {
            throw std::invalid_argument("PFrac: " + to_string(q) + " is not in Z[1/" +
                                        std::to_string(p) + "]");
        }
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        ++k;
    }
    return PFrac(p, q.get_num(), k);
}

PFrac PFrac::parse(unsigned long p, std::string_view text) {
    const std::string s = normalize_text(text);
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return PFrac(p, parse_int(s), 0);
    }
    const std::string_view rhs = std::string_view(s).substr(slash + 1);
    const Int j = parse_int(std::string_view(s).substr(0, slash));
    const auto caret = rhs.find('^');
    if (caret == std::string_view::npos) {
        return from_rat(p, make_rat(j, parse_int(rhs)));
    }
    const Int base = parse_int(rhs.substr(0, caret));
    const Int exp = parse_int(rhs.substr(caret + 1));
    if (base != p || exp < 0) {
        throw std::invalid_argument("PFrac: denominator must be " + std::to_string(p) + "^k");
    }
    return PFrac(p, j, exp.get_ui());
}

Rat PFrac::to_rat() const { return make_rat(j_, ipow(Int(p_), k_)); }

std::string PFrac::str() const {
    if (k_ == 0) {
        return to_string(j_);
    }
    return to_string(j_) + "/" + std::to_string(p_) + "^" + std::to_string(k_);
}

unsigned long PFrac::common_prime(const PFrac& a, const PFrac& b) {
    if (a.p_ != b.p_) {
        throw std::invalid_argument("PFrac: mixed primes");
    }
    return a.p_;
}

PFrac operator+(const PFrac& a, const PFrac& b) {
    const unsigned long p = PFrac::common_prime(a, b);
    const unsigned long k = std::max(a.k_, b.k_);
    return PFrac(p, a.j_ * ipow(Int(p), k - a.k_) + b.j_ * ipow(Int(p), k - b.k_), k);
}

PFrac operator-(const PFrac& a, const PFrac& b) { return a + (-b); }

PFrac operator*(const PFrac& a, const PFrac& b) {
    return PFrac(PFrac::common_prime(a, b), a.j_ * b.j_, a.k_ + b.k_);
}

// ------------------------------------------------------------- QuadReal

QuadReal::QuadReal(Rat a, Rat b, unsigned long radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0) {
        d_ = 0;
        return;
    }
    if (radicand < 2 || !is_squarefree(radicand)) {
        throw std::invalid_argument("QuadReal: radicand " + std::to_string(radicand) +
                                    " must be a square-free integer > 1");
    }
}

namespace {

// One additive term of a quadratic expression: "B*sqrt(D)", "sqrt(D)" or "A".
void add_term(std::string_view term, bool negative, Rat& a, Rat& b, unsigned long& d) {
    const auto pos = term.find("sqrt(");
    if (pos == std::string_view::npos) {
        const Rat v = parse_rat(term);
        a += negative ? -v : v;
        return;
    }
    if (term.back() != ')') {
        throw std::invalid_argument("QuadReal: malformed sqrt term '" + std::string(term) + "'");
    }
    Rat coeff = 1;
    if (pos > 0) {
        std::string_view c = term.substr(0, pos);
        if (c.back() != '*') {
            throw std::invalid_argument("QuadReal: expected '*' before sqrt");
        }
        coeff = parse_rat(c.substr(0, c.size() - 1));
    }
    const Int rad = parse_int(term.substr(pos + 5, term.size() - pos - 6));
    if (rad < 2) {
        throw std::invalid_argument("QuadReal: radicand must be > 1");
    }
    const unsigned long r = rad.get_ui();
    if (d != 0 && d != r) {
        throw RadicandMismatch("QuadReal: mixed radicands in one expression");
    }
    d = r;
    b += negative ? -coeff : coeff;
}

}  // namespace

QuadReal QuadReal::parse(std::string_view text) {
    std::string s = normalize_text(text);
    if (s.empty()) {
        throw std::invalid_argument("QuadReal: empty input");
    }
    Rat divisor = 1;
    if (s.front() == '(') {
        const auto close = s.rfind(')');
        if (close == std::string::npos) {
            throw std::invalid_argument("QuadReal: unbalanced parenthesis");
        }
        if (close + 1 < s.size()) {
            if (s[close + 1] != '/') {
                throw std::invalid_argument("QuadReal: expected '/' after ')'");
            }
            divisor = parse_rat(std::string_view(s).substr(close + 2));
            if (divisor == 0) {
                throw std::domain_error("QuadReal: zero divisor");
            }
        }
        s = s.substr(1, close - 1);
    }
    Rat a = 0, b = 0;
    unsigned long d = 0;
    // Split at top-level '+'/'-' that do not start the string or follow '*', '/', '('.
    std::size_t start = 0;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        start = 1;
    }
    int depth = 0;
    for (std::size_t i = start; i <= s.size(); ++i) {
        const char c = i < s.size() ? s[i] : '\0';
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        const bool split = c == '\0' || (depth == 0 && (c == '+' || c == '-') && i > start &&
                                         s[i - 1] != '*' && s[i - 1] != '/');
        if (split) {
            add_term(std::string_view(s).substr(start, i - start), negative, a, b, d);
            negative = c == '-';
            start = i + 1;
        }
    }
    return QuadReal(a / divisor, b / divisor, d == 0 ? 2 : d);
}

int sign_of(const Rat& u, const Rat& v, unsigned long radicand) {
    const int su = sgn(u);
    const int sv = sgn(v);
    if (sv == 0 || radicand == 0) {
        return su;
    }
    if (su == 0 || su == sv) {
        return sv;
    }
    // Opposite signs: compare u^2 with v^2 * D.
    const Rat diff = u * u - v * v * radicand;
    return su > 0 ? sgn(diff) : -sgn(diff);
}

int QuadReal::sign() const { return sign_of(a_, b_, radicand()); }

unsigned long QuadReal::joint_radicand(const QuadReal& x, const QuadReal& y) {
    const unsigned long dx = x.radicand();
    const unsigned long dy = y.radicand();
    if (dx != 0 && dy != 0 && dx != dy) {
        throw RadicandMismatch("QuadReal: sqrt(" + std::to_string(dx) + ") and sqrt(" +
                               std::to_string(dy) + ") cannot be combined");
    }
    return dx != 0 ? dx : dy;
}

QuadReal QuadReal::conjugate() const {
    QuadReal out = *this;
    out.b_ = -out.b_;
    return out;
}

Rat QuadReal::norm() const { return a_ * a_ - b_ * b_ * radicand(); }

QuadReal QuadReal::operator-() const {
    QuadReal out = *this;
    out.a_ = -out.a_;
    out.b_ = -out.b_;
    return out;
}

QuadReal& QuadReal::operator+=(const QuadReal& o) {
    d_ = joint_radicand(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) {
        d_ = 0;
    }
    return *this;
}

QuadReal& QuadReal::operator-=(const QuadReal& o) { return *this += -o; }

QuadReal& QuadReal::operator*=(const QuadReal& o) {
    const unsigned long d = joint_radicand(*this, o);
    const Rat a = a_ * o.a_ + b_ * o.b_ * d;
    const Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    d_ = b_ == 0 ? 0 : d;
    return *this;
}

QuadReal& QuadReal::operator/=(const QuadReal& o) {
    if (o.is_zero()) {
        throw std::domain_error("QuadReal: division by zero");
    }
    joint_radicand(*this, o);
    const Rat n = o.norm();
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
}

bool operator==(const QuadReal& x, const QuadReal& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.radicand() == y.radicand();
}

std::strong_ordering operator<=>(const QuadReal& x, const QuadReal& y) {
    const unsigned long d = QuadReal::joint_radicand(x, y);
    const int s = sign_of(x.a_ - y.a_, x.b_ - y.b_, d);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Int QuadReal::floor() const {
    if (b_ == 0) {
        return floor_rat(a_);
    }
    // x = (A + B sqrt(D)) / C with integers and C > 0.
    Int c;
    mpz_lcm(c.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    const Int big_a = a_.get_num() * (c / a_.get_den());
    const Int big_b = b_.get_num() * (c / b_.get_den());
    Int root;
    const Int sq = big_b * big_b * d_;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    // B sqrt(D) is irrational, so it lies strictly between root and root + 1 (or the negatives).
    const Int lower = big_b > 0 ? Int(big_a + root) : Int(big_a - root - 1);
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), lower.get_mpz_t(), c.get_mpz_t());
    return out;
}

double QuadReal::to_double() const {
    if (b_ == 0) {
        return a_.get_d();
    }
    mpf_class root(d_, 512);
    mpf_sqrt(root.get_mpf_t(), root.get_mpf_t());
    mpf_class a(a_, 512), b(b_, 512);
    mpf_class out(a + b * root, 512);
    return out.get_d();
}

std::string QuadReal::str() const {
    if (b_ == 0) {
        return to_string(a_);
    }
    Int c;
    mpz_lcm(c.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    const Int big_a = a_.get_num() * (c / a_.get_den());
    const Int big_b = b_.get_num() * (c / b_.get_den());
    std::ostringstream os;
    os << '(' << to_string(big_a) << (big_b < 0 ? " - " : " + ") << to_string(Int(abs(big_b)))
       << "*sqrt(" << d_ << "))/" << to_string(c);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadReal& x) { return os << x.str(); }

std::ostream& operator<<(std::ostream& os, const PFrac& x) { return os << x.str(); }

}  // namespace nsol
