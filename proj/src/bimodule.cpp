#include "nsol/bimodule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace nsol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx cis(double x) {
    // x is a number of turns; reduce first so large arguments keep their digits
    const double f = x - std::floor(x);
    return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

double wrap(double x) { return x - std::floor(x); }

long to_long(const Int& z, const char* what) {
    if (!z.fits_slong_p()) {
        throw std::overflow_error(std::string("bimodule: ") + what + " does not fit in a machine integer");
    }
    return z.get_si();
}

long mod_pos(long long j, long m) {
    const long long r = j % m;
    return static_cast<long>(r < 0 ? r + m : r);
}

void require_modulus(const BimCtx& ctx, const ModElem& F) {
    if (F.modulus() != ctx.modulus) {
        throw std::invalid_argument("module element has modulus " + std::to_string(F.modulus()) +
                                    ", context expects " + std::to_string(ctx.modulus));
    }
}

std::pair<long, long> int_range(double lo, double hi) {
    // one extra index on each side absorbs rounding at the support ends
    return {static_cast<long>(std::ceil(lo)) - 1, static_cast<long>(std::floor(hi)) + 1};
}

void check_range_edge(cplx outside_term) {
    if (outside_term != cplx(0.0)) {
        throw std::logic_error("summation range truncated a nonzero term");
    }
}

}  // namespace

// ---- HatFn ----

HatFn::HatFn(std::vector<Rat> breakpoints, std::vector<cplx> values)
    : breaks_(std::move(breakpoints)), ys_(std::move(values)) {
    if (breaks_.size() < 2 || breaks_.size() != ys_.size()) {
        throw std::invalid_argument("HatFn needs at least two breakpoints and one value per breakpoint");
    }
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        if (!(breaks_[i] < breaks_[i + 1])) {
            throw std::invalid_argument("HatFn breakpoints must be strictly increasing");
        }
    }
    if (ys_.front() != cplx(0.0) || ys_.back() != cplx(0.0)) {
        throw std::invalid_argument("HatFn must vanish at its end breakpoints");
    }
    xs_.reserve(breaks_.size());
    for (const Rat& q : breaks_) {
        xs_.push_back(q.get_d());
    }
}

cplx HatFn::operator()(double x) const {
    if (!(x > xs_.front() && x < xs_.back())) {
        return 0.0;
    }
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
    return ys_[i - 1] * (1.0 - w) + ys_[i] * w;
}

// ---- Atom / ModElem ----

cplx Atom::operator()(double t) const {
    const cplx h = (*hat)(s * t + u);
    if (h == cplx(0.0)) {
        return 0.0;
    }
    return coeff * h * cis(omega * t + phi);
}

ModElem::ModElem(long modulus) : modulus_(modulus) {
    if (modulus < 1) {
        throw std::invalid_argument("ModElem modulus must be positive");
    }
}

long ModElem::reduce(long j) const { return mod_pos(j, modulus_); }

void ModElem::add(long j, Atom atom) { terms_[reduce(j)].push_back(std::move(atom)); }

ModElem ModElem::single(long modulus, long j, std::shared_ptr<const HatFn> hat) {
    ModElem out(modulus);
    out.add(j, Atom{std::move(hat)});
    return out;
}

cplx ModElem::operator()(double t, long m) const {
    const auto it = terms_.find(reduce(m));
    if (it == terms_.end()) {
        return 0.0;
    }
    cplx sum = 0.0;
    for (const Atom& a : it->second) {
        sum += a(t);
    }
    return sum;
}

std::pair<double, double> ModElem::support() const {
    if (terms_.empty()) {
        return {0.0, 0.0};
    }
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [j, atoms] : terms_) {
        for (const Atom& a : atoms) {
            lo = std::min(lo, a.lo());
            hi = std::max(hi, a.hi());
        }
    }
    return {lo, hi};
}

ModElem ModElem::translated(double tau, long shift) const {
    ModElem out(modulus_);
    for (const auto& [j, atoms] : terms_) {
        for (Atom a : atoms) {
            a.u -= a.s * tau;
            a.phi = wrap(a.phi - a.omega * tau);
            out.add(j + shift, std::move(a));
        }
    }
    return out;
}

ModElem ModElem::modulated(double omega, const std::function<double(long)>& phase) const {
    ModElem out(modulus_);
    for (const auto& [j, atoms] : terms_) {
        const double ph = phase(j);
        for (Atom a : atoms) {
            a.omega += omega;
            a.phi = wrap(a.phi + ph);
            out.add(j, std::move(a));
        }
    }
    return out;
}

ModElem ModElem::scaled(cplx factor) const {
    if (factor == cplx(0.0)) {
        return ModElem(modulus_);
    }
    ModElem out = *this;
    for (auto& [j, atoms] : out.terms_) {
        for (Atom& a : atoms) {
            a.coeff *= factor;
        }
    }
    return out;
}

ModElem operator+(const ModElem& a, const ModElem& b) {
    if (a.modulus_ != b.modulus_) {
        throw std::invalid_argument("adding module elements with different moduli");
    }
    ModElem out = a;
    for (const auto& [j, atoms] : b.terms_) {
        for (const Atom& at : atoms) {
            out.add(j, at);
        }
    }
    return out;
}

// ---- AlgElem ----

AlgElem AlgElem::identity() {
    AlgElem e;
    e.set(0, [](double) { return cplx(1.0); });
    return e;
}

cplx AlgElem::operator()(long k, double r) const {
    const auto it = comps_.find(k);
    return it == comps_.end() ? cplx(0.0) : it->second(r);
}

// ---- context ----

BimCtx make_context(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n) {
    const ProjectionStage st = projection_stages(spec, proj, n).back();
    BimCtx ctx;
    ctx.spec = spec;
    ctx.proj = proj;
    ctx.n = n;
    ctx.c = st.line.c2n;
    ctx.d = st.line.d2n;
    ctx.a = st.mobius.a;
    ctx.b = st.mobius.b;
    ctx.alpha = st.alpha;
    ctx.beta = st.beta;
    ctx.gamma = QuadReal(1) / (QuadReal(Rat(ctx.c)) * ctx.alpha + QuadReal(Rat(ctx.d)));
    if (ctx.gamma != QuadReal(1) / proj.trace(spec.theta)) {
        throw std::logic_error("gamma depends on the level");
    }
    const Int absc = abs(ctx.c);
    ctx.modulus = to_long(absc, "c_{2n}");
    ctx.d_l = to_long(ctx.d, "d_{2n}");
    Int amod;
    mpz_fdiv_r(amod.get_mpz_t(), ctx.a.get_mpz_t(), absc.get_mpz_t());
    ctx.a_mod = to_long(amod, "a_{2n} mod c");
    ctx.c_d = ctx.c.get_d();
    ctx.alpha_d = ctx.alpha.to_double();
    ctx.beta_d = ctx.beta.to_double();
    ctx.gamma_d = ctx.gamma.to_double();
    ctx.right_v_freq = ((QuadReal(Rat(ctx.c)) * ctx.alpha + QuadReal(Rat(ctx.d))) / QuadReal(Rat(ctx.c))).to_double();
    return ctx;
}

// ---- actions ----

ModElem act_left_gen(const BimCtx& ctx, Gen gen, long power, const ModElem& F) {
    require_modulus(ctx, F);
    if (power == 0) {
        return F;
    }
    if (gen == Gen::U) {
        return F.translated(static_cast<double>(power) * ctx.gamma_d, power);
    }
    // e^{2 pi i k (t - a m)/c}; a m mod c is exact
    const long M = ctx.modulus;
    const double c = ctx.c_d;
    return F.modulated(static_cast<double>(power) / c, [&](long j) {
        const long q = mod_pos(static_cast<long long>(mod_pos(power, M)) * ctx.a_mod % M * j, M);
        return -static_cast<double>(q) / c;
    });
}

ModElem act_right_gen(const BimCtx& ctx, Gen gen, long power, const ModElem& F) {
    require_modulus(ctx, F);
    if (power == 0) {
        return F;
    }
    if (gen == Gen::U) {
        return F.translated(static_cast<double>(power), ctx.d_l * power);
    }
    // e^{2 pi i k (t/gamma - m)/c}
    const long M = ctx.modulus;
    const double c = ctx.c_d;
    return F.modulated(static_cast<double>(power) * ctx.right_v_freq, [&](long j) {
        const long q = mod_pos(static_cast<long long>(power) * j, M);
        return -static_cast<double>(q) / c;
    });
}

cplx act_left_eval(const BimCtx& ctx, const AlgElem& A, const ModElem& F, double t, long m) {
    require_modulus(ctx, F);
    const long q = mod_pos(static_cast<long long>(ctx.a_mod) * mod_pos(m, ctx.modulus), ctx.modulus);
    const double r = (t - q) / ctx.c_d;
    cplx sum = 0.0;
    for (const auto& [k, fk] : A.components()) {
        const cplx v = F(t - k * ctx.gamma_d, m - k);
        if (v != cplx(0.0)) {
            sum += fk(r) * v;
        }
    }
    return sum;
}

cplx act_right_eval(const BimCtx& ctx, const ModElem& F, const AlgElem& B, double t, long m) {
    require_modulus(ctx, F);
    cplx sum = 0.0;
    for (const auto& [k, gk] : B.components()) {
        const long idx = m - ctx.d_l * k;
        const cplx v = F(t - k, idx);
        if (v != cplx(0.0)) {
            const long q = mod_pos(idx, ctx.modulus);
            sum += v * gk((t - k) * ctx.right_v_freq - q / ctx.c_d);
        }
    }
    return sum;
}

// ---- inner products ----

AlgElem inner_left(const BimCtx& ctx, const ModElem& F1, const ModElem& F2) {
    require_modulus(ctx, F1);
    require_modulus(ctx, F2);
    AlgElem out;
    if (F1.is_zero() || F2.is_zero()) {
        return out;
    }
    const auto [lo1, hi1] = F1.support();
    const auto [lo2, hi2] = F2.support();
    const double g = ctx.gamma_d, c = ctx.c_d;
    const long d = ctx.d_l;
    auto f1 = std::make_shared<const ModElem>(F1);
    auto f2 = std::make_shared<const ModElem>(F2);
    const auto [kmin, kmax] = int_range((lo1 - hi2) / g, (hi1 - lo2) / g);
    for (long k = kmin; k <= kmax; ++k) {
        out.set(k, [=](double r) {
            const double x = c * r;
            const auto [mlo, mhi] = int_range(lo1 - x, hi1 - x);
            auto term = [&](long m) {
                const cplx u = (*f1)(x + m, d * m);
                return u == cplx(0.0) ? u : u * std::conj((*f2)(x + m - k * g, d * m - k));
            };
            check_range_edge(term(mlo - 1));
            check_range_edge(term(mhi + 1));
            cplx sum = 0.0;
            for (long m = mlo; m <= mhi; ++m) {
                sum += term(m);
            }
            return sum;
        });
    }
    return out;
}

AlgElem inner_right(const BimCtx& ctx, const ModElem& F1, const ModElem& F2) {
    require_modulus(ctx, F1);
    require_modulus(ctx, F2);
    AlgElem out;
    if (F1.is_zero() || F2.is_zero()) {
        return out;
    }
    const auto [lo1, hi1] = F1.support();
    const auto [lo2, hi2] = F2.support();
    const double g = ctx.gamma_d, c = ctx.c_d;
    const long d = ctx.d_l;
    auto f1 = std::make_shared<const ModElem>(F1);
    auto f2 = std::make_shared<const ModElem>(F2);
    const auto [kmin, kmax] = int_range(lo2 - hi1, hi2 - lo1);
    for (long k = kmin; k <= kmax; ++k) {
        out.set(k, [=](double r) {
            const double x = c * r;
            const auto [mlo, mhi] = int_range(x - hi1 / g, x - lo1 / g);
            auto term = [&](long m) {
                const double s = (x - m) * g;
                const cplx u = (*f1)(s, -m);
                return u == cplx(0.0) ? u : std::conj(u) * (*f2)(s + k, d * k - m);
            };
            check_range_edge(term(mlo - 1));
            check_range_edge(term(mhi + 1));
            cplx sum = 0.0;
            for (long m = mlo; m <= mhi; ++m) {
                sum += term(m);
            }
            return sum;
        });
    }
    return out;
}

// ---- embeddings ----

ModElem iota_embed(const BimCtx& ctx_n, const ModElem& F) {
    require_modulus(ctx_n, F);
    const long p = static_cast<long>(ctx_n.spec.p);
    ModElem out(ctx_n.modulus * p * p);
    const long step = to_long(ctx_n.c, "c_{2n}") * p;  // c0 p^{2n+1}
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));
    for (const auto& [j, atoms] : F.terms()) {
        for (long i = 0; i < p; ++i) {
            for (Atom a : atoms) {
                a.s /= static_cast<double>(p);
                a.omega /= static_cast<double>(p);
                a.coeff *= inv_sqrt_p;
                out.add(j * p + i * step, std::move(a));
            }
        }
    }
    return out;
}

AlgElem phi_embed(unsigned long p, const AlgElem& A) {
    AlgElem out;
    const double pd = static_cast<double>(p);
    for (const auto& [k, f] : A.components()) {
        out.set(k * static_cast<long>(p), [f, pd](double r) { return f(pd * r); });
    }
    return out;
}

AlgElem convolve(const AlgElem& A, const AlgElem& B, double angle) {
    AlgElem out;
    std::set<long> ks;
    for (const auto& [l, fa] : A.components()) {
        for (const auto& [j, fb] : B.components()) {
            ks.insert(l + j);
        }
    }
    auto a = std::make_shared<const AlgElem>(A);
    auto b = std::make_shared<const AlgElem>(B);
    for (long k : ks) {
        out.set(k, [a, b, k, angle](double r) {
            cplx sum = 0.0;
            for (const auto& [l, fa] : a->components()) {
                sum += fa(r) * (*b)(k - l, r + l * angle);
            }
            return sum;
        });
    }
    return out;
}

// ---- identity suite ----

bool IdentityReport::pass(double tol) const {
    for (const auto& [name, err] : max_error) {
        if (!(err <= tol)) {
            return false;
        }
    }
    return !max_error.empty();
}

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    std::shared_ptr<const HatFn> hat() {
        // dyadic breakpoints on a 1/16 grid: support start in [-2, 1.5], width in [1/4, 2]
        const long start = integer(-32, 24);
        const long width = integer(4, 32);
        const long inner = integer(1, 3);
        std::set<long> cuts;
        while (static_cast<long>(cuts.size()) < std::min(inner, width - 1)) {
            cuts.insert(start + integer(1, width - 1));
        }
        std::vector<Rat> xs{Rat(start, 16)};
        std::vector<cplx> ys{0.0};
        for (long x : cuts) {
            xs.emplace_back(x, 16);
            ys.emplace_back(uniform(-1, 1), uniform(-1, 1));
        }
        xs.emplace_back(start + width, 16);
        ys.emplace_back(0.0);
        for (Rat& q : xs) {
            q.canonicalize();
        }
        return std::make_shared<const HatFn>(std::move(xs), std::move(ys));
    }

    ModElem element(long modulus, std::size_t& hats) {
        ModElem F(modulus);
        const long terms = integer(1, 3);
        for (long i = 0; i < terms; ++i) {
            F.add(integer(0, modulus - 1), Atom{hat(), 1.0, 0.0, cplx(uniform(-1, 1), uniform(-1, 1))});
            ++hats;
        }
        return F;
    }

    AlgElem trig_element() {
        AlgElem A;
        const long comps = integer(1, 5);
        for (long i = 0; i < comps; ++i) {
            std::vector<cplx> coeffs;
            for (int q = -2; q <= 2; ++q) {
                coeffs.emplace_back(uniform(-1, 1), uniform(-1, 1));
            }
            A.set(integer(-2, 2), [coeffs](double r) {
                cplx s = 0.0;
                for (int q = -2; q <= 2; ++q) {
                    s += coeffs[static_cast<std::size_t>(q + 2)] * cis(q * r);
                }
                return s;
            });
        }
        return A;
    }

private:
    std::mt19937_64 rng_;
};

using PointFn = std::function<cplx(double, long)>;

std::vector<double> t_points(Sampler& rng, std::pair<double, double> a, std::pair<double, double> b,
                             const SamplePlan& plan) {
    const double lo = std::min(a.first, b.first) - 1.0;
    const double hi = std::max(a.second, b.second) + 1.0;
    std::vector<double> ts;
    for (std::size_t i = 0; i < plan.grid; ++i) {
        ts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(plan.grid));
    }
    for (std::size_t i = 0; i < plan.points; ++i) {
        ts.push_back(rng.uniform(lo, hi));
    }
    return ts;
}

std::vector<double> r_points(Sampler& rng, const SamplePlan& plan) {
    std::vector<double> rs;
    for (std::size_t i = 0; i < plan.grid; ++i) {
        rs.push_back(static_cast<double>(i) / static_cast<double>(plan.grid));
    }
    for (std::size_t i = 0; i < plan.points; ++i) {
        rs.push_back(rng.uniform());
    }
    return rs;
}

double max_dev(const std::vector<double>& ts, long modulus, const PointFn& lhs, const PointFn& rhs) {
    double worst = 0.0;
    for (double t : ts) {
        for (long m = 0; m < modulus; ++m) {
            worst = std::max(worst, std::abs(lhs(t, m) - rhs(t, m)));
        }
    }
    return worst;
}

double max_dev_elem(Sampler& rng, const SamplePlan& plan, const ModElem& lhs, const ModElem& rhs) {
    const auto ts = t_points(rng, lhs.support(), rhs.support(), plan);
    return max_dev(ts, lhs.modulus(), [&](double t, long m) { return lhs(t, m); },
                   [&](double t, long m) { return rhs(t, m); });
}

double max_dev_alg(const std::vector<double>& rs, const AlgElem& lhs, const AlgElem& rhs, double scale = 1.0) {
    std::set<long> ks;
    for (const auto& [k, f] : lhs.components()) ks.insert(k);
    for (const auto& [k, f] : rhs.components()) ks.insert(k);
    double worst = 0.0;
    for (long k : ks) {
        for (double r : rs) {
            worst = std::max(worst, std::abs(lhs(k, r) - scale * rhs(k, r)));
        }
    }
    return worst;
}

}  // namespace

IdentityReport identity_suite(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n,
                              const SamplePlan& plan) {
    if (plan.functions == 0 || plan.grid + plan.points == 0) {
        throw std::invalid_argument("identity_suite: empty sample plan");
    }
    const BimCtx lo = make_context(spec, proj, n);
    const BimCtx hi = make_context(spec, proj, n + 1);
    BimCtx corrupted = hi;
    corrupted.gamma_d += 0.01;
    const long p = static_cast<long>(spec.p);

    Sampler rng(plan.seed);
    IdentityReport rep;
    double ea = 0, eb = 0, ec = 0, ed = 0, ee = 0, ephi = 0, ebad = 0, ec_p = 0, ed_p = 0;

    for (std::size_t trial = 0; trial < plan.functions; ++trial) {
        ModElem F(lo.modulus), G(lo.modulus), H(lo.modulus);
        if (!plan.zero_functions) {
            F = rng.element(lo.modulus, rep.hat_functions);
            G = rng.element(lo.modulus, rep.hat_functions);
            H = rng.element(lo.modulus, rep.hat_functions);
        }
        const ModElem iF = iota_embed(lo, F);
        const ModElem iG = iota_embed(lo, G);

        // (a) left action, (b) right action
        for (Gen g : {Gen::U, Gen::V}) {
            ea = std::max(ea, max_dev_elem(rng, plan, iota_embed(lo, act_left_gen(lo, g, 1, F)),
                                           act_left_gen(hi, g, p, iF)));
            eb = std::max(eb, max_dev_elem(rng, plan, iota_embed(lo, act_right_gen(lo, g, 1, F)),
                                           act_right_gen(hi, g, p, iF)));
        }
        ebad = std::max(ebad, max_dev_elem(rng, plan, iota_embed(lo, act_left_gen(lo, Gen::U, 1, F)),
                                           act_left_gen(corrupted, Gen::U, p, iF)));

        // (c), (d) inner products against the algebra embeddings
        const auto rs = r_points(rng, plan);
        {
            const AlgElem cl = phi_embed(spec.p, inner_left(lo, F, G)), cr = inner_left(hi, iF, iG);
            const AlgElem dl = phi_embed(spec.p, inner_right(lo, F, G)), dr = inner_right(hi, iF, iG);
            ec = std::max(ec, max_dev_alg(rs, cl, cr));
            ed = std::max(ed, max_dev_alg(rs, dl, dr));
            // each m in the level-(n+1) sum meets one class only, so the 1/sqrt(p) of iota enters squared
            ec_p = std::max(ec_p, max_dev_alg(rs, cl, cr, static_cast<double>(p)));
            ed_p = std::max(ed_p, max_dev_alg(rs, dl, dr, static_cast<double>(p)));
        }

        // (e) imprimitivity and the commutation relations at both levels
        for (const BimCtx* ctx : {&lo, &hi}) {
            const ModElem& F1 = ctx == &lo ? F : iF;
            const ModElem& G1 = ctx == &lo ? G : iG;
            const ModElem H1 = ctx == &lo ? H : iota_embed(lo, H);
            const AlgElem left = inner_left(*ctx, F1, G1);
            const AlgElem right = inner_right(*ctx, G1, H1);
            const auto ts = t_points(rng, F1.support(), H1.support(), plan);
            ee = std::max(ee, max_dev(ts, ctx->modulus,
                                      [&](double t, long m) { return act_left_eval(*ctx, left, H1, t, m); },
                                      [&](double t, long m) { return act_right_eval(*ctx, F1, right, t, m); }));

            const ModElem uv = act_left_gen(*ctx, Gen::U, 1, act_left_gen(*ctx, Gen::V, 1, F1));
            const ModElem vu = act_left_gen(*ctx, Gen::V, 1, act_left_gen(*ctx, Gen::U, 1, F1));
            ee = std::max(ee, max_dev_elem(rng, plan, uv, vu.scaled(cis(ctx->beta_d))));
            const ModElem fuv = act_right_gen(*ctx, Gen::V, 1, act_right_gen(*ctx, Gen::U, 1, F1));
            const ModElem fvu = act_right_gen(*ctx, Gen::U, 1, act_right_gen(*ctx, Gen::V, 1, F1));
            ee = std::max(ee, max_dev_elem(rng, plan, fuv, fvu.scaled(cis(ctx->alpha_d))));
        }

        // the algebra embedding is multiplicative
        if (!plan.zero_functions) {
            const AlgElem A = rng.trig_element();
            const AlgElem B = rng.trig_element();
            ephi = std::max(ephi, max_dev_alg(rs, phi_embed(spec.p, convolve(A, B, lo.beta_d)),
                                              convolve(phi_embed(spec.p, A), phi_embed(spec.p, B), hi.beta_d)));
        }
        rep.samples += plan.grid + plan.points;
    }

    rep.max_error = {{"a_left_action", ea},   {"b_right_action", eb}, {"c_left_inner", ec},
                     {"d_right_inner", ed},   {"e_imprimitivity", ee}, {"phi_homomorphism", ephi}};
    rep.diagnostics = {{"c_left_inner_times_p", ec_p}, {"d_right_inner_times_p", ed_p}};
    rep.corrupted_gamma_deviation = ebad;
    return rep;
}

}  // namespace nsol
