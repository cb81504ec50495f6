#include "nsol/morita.hpp"

#include <sstream>

namespace nsol {

namespace {

QuadReal q(const Int& z) { return QuadReal(Rat(z)); }

Int gcd_int(const Int& u, const Int& v) {
    Int g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    return g;
}

void require_heisenberg_hypotheses(const SolenoidSpec& spec) {
    if (spec.theta.is_zero()) {
        throw std::invalid_argument("Heisenberg partner needs theta != 0");
    }
    if (!spec.digits.padic()) {
        throw PrecisionError("Heisenberg partner needs the full (periodic) digit stream of x_alpha");
    }
    if (spec.digits.padic()->is_zero()) {
        throw std::invalid_argument("Heisenberg partner needs x_alpha != 0");
    }
}

}  // namespace

void ProjectionData::validate(const QuadReal& theta) const {
    if (c0 == 0) {
        throw std::invalid_argument("projection data: c0 must be nonzero");
    }
    if (m < 1) {
        throw std::invalid_argument("projection data: m must be positive");
    }
    const QuadReal t = trace(theta);
    if (t <= QuadReal(0) || t >= q(m)) {
        throw std::invalid_argument("projection data: trace " + t.str() + " is not in (0, " + to_string(m) + ")");
    }
}

QuadReal MobiusPair::apply(const QuadReal& alpha) const {
    return (q(a) * alpha + q(b)) / (q(c) * alpha + q(d));
}

bool condition_check(unsigned long p, const ProjectionData& proj, unsigned long x0) {
    return gcd_int(proj.c0 * p, proj.d0 - proj.c0 * x0) == 1;
}

TraceLine trace_line(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t n) {
    TraceLine line{n, proj.c0 * ipow(Int(spec.p), 2 * n), proj.d0 - proj.c0 * spec.digits.partial_sum(2 * n)};
    // tau(P) does not depend on the level.
    if (q(line.c2n) * alpha_at(spec, 2 * n) + q(line.d2n) != proj.trace(spec.theta)) {
        throw std::logic_error("trace line at level " + std::to_string(n) + " does not reproduce c0 alpha0 + d0");
    }
    return line;
}

MobiusPair ab_normalized(const TraceLine& line, const QuadReal& alpha2n) {
    const Bezout bz = ext_gcd(line.d2n, line.c2n);
    if (bz.g != 1) {
        throw ConditionError("trace line (" + to_string(line.c2n) + ", " + to_string(line.d2n) +
                             ") is not coprime; gcd = " + to_string(bz.g));
    }
    // s d + t c = 1  =>  a = s, b = -t gives a d - b c = 1.
    MobiusPair mp{bz.s, -bz.t, line.c2n, line.d2n};
    const Int shift = -mp.apply(alpha2n).floor();
    mp.a += shift * mp.c;
    mp.b += shift * mp.d;
    return mp;
}

std::optional<TraceLine> coprimality_witness(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t max_n) {
    for (std::size_t n = 0; n <= max_n; ++n) {
        TraceLine line = trace_line(spec, proj, n);
        if (gcd_int(line.c2n, line.d2n) != 1) {
            return line;
        }
    }
    return std::nullopt;
}

std::vector<ProjectionStage> projection_stages(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t N) {
    proj.validate(spec.theta);
    if (!condition_check(spec.p, proj, spec.digits.at(0))) {
        std::ostringstream msg;
        msg << "gcd(c0 p, d0 - c0 x0) != 1 for c0 = " << to_string(proj.c0) << ", d0 = " << to_string(proj.d0)
            << ", x0 = " << spec.digits.at(0);
        if (const auto w = coprimality_witness(spec, proj, std::min<std::size_t>(N + 1, 25))) {
            msg << "; level " << w->n << " trace line (" << to_string(w->c2n) << ", " << to_string(w->d2n)
                << ") has gcd " << to_string(gcd_int(w->c2n, w->d2n));
        } else {
            msg << "; gcd(c0, d0) = " << to_string(gcd_int(proj.c0, proj.d0));
        }
        throw ConditionError(msg.str());
    }
    std::vector<ProjectionStage> out;
    out.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        TraceLine line = trace_line(spec, proj, n);
        QuadReal alpha = alpha_at(spec, 2 * n);
        MobiusPair mp = ab_normalized(line, alpha);
        QuadReal beta = mp.apply(alpha);
        out.push_back({std::move(line), std::move(mp), std::move(alpha), std::move(beta)});
    }
    return out;
}

SeqWindow projection_partner(const SolenoidSpec& spec, const ProjectionData& proj, std::size_t N) {
    SeqWindow w;
    for (auto& st : projection_stages(spec, proj, N)) {
        w.push(static_cast<long>(2 * st.line.n), std::move(st.beta));
    }
    return w;
}

ProjectionData inverse_projection(const SolenoidSpec& spec, const ProjectionData& proj) {
    const auto stage0 = projection_stages(spec, proj, 0).front();
    const QuadReal gamma = QuadReal(1) / proj.trace(spec.theta);
    return ProjectionData{gamma.floor() + 1, -proj.c0, stage0.mobius.a};
}

SolenoidSpec heisenberg_partner_spec(const SolenoidSpec& spec) {
    require_heisenberg_hypotheses(spec);
    const PAdic y = spec.digits.padic()->invert();
    const QuadReal theta = QuadReal(1) / spec.theta + QuadReal(y.frac_part().to_rat());
    return SolenoidSpec(spec.p, theta, DigitStream::periodic(y.integral_part()));
}

SeqWindow heisenberg_partner(const SolenoidSpec& spec, std::size_t N) {
    require_heisenberg_hypotheses(spec);
    const PAdic y = spec.digits.padic()->invert();
    const long v = -y.ord();
    const QuadReal inv_theta = QuadReal(1) / spec.theta;
    SeqWindow w;
    for (std::size_t n = 0; n <= N; ++n) {
        const QuadReal pn(Rat(ipow(Int(spec.p), n)));
        const QuadReal tail(y.truncate_sum(-v, static_cast<long>(n) - 1).to_rat());
        w.push(static_cast<long>(n), inv_theta / pn + tail / pn);
    }
    return w;
}

bool RelateReport::exact_agreement() const {
    for (const auto& l : levels) {
        if (!l.b_integral || !l.exact_match) {
            return false;
        }
    }
    return !levels.empty();
}

std::vector<Int> RelateReport::determinants() const {
    std::vector<Int> out;
    for (const auto& l : levels) {
        const Int det = l.displayed.det();
        if (std::find(out.begin(), out.end(), det) == out.end()) {
            out.push_back(det);
        }
    }
    return out;
}

bool RelateReport::agrees_up_to_sign_mod1() const {
    for (const auto& l : levels) {
        if (!l.normalized_matches_heisenberg_mod1 && !l.normalized_matches_negated_heisenberg_mod1) {
            return false;
        }
    }
    return !levels.empty();
}

RelateReport relate_report(const SolenoidSpec& spec, std::size_t N) {
    require_heisenberg_hypotheses(spec);
    if (spec.digits.at(0) == 0) {
        throw std::invalid_argument("relate_check needs x_0 != 0");
    }
    const unsigned long p = spec.p;
    const PAdic y = spec.digits.padic()->invert();
    const SeqWindow heis = heisenberg_partner(spec, 2 * N);
    RelateReport report;
    for (std::size_t n = 0; n <= N; ++n) {
        const Int X = spec.digits.partial_sum(2 * n);
        const Rat Y = y.truncate_sum(0, static_cast<long>(2 * n) - 1).to_rat();
        const Int p2n = ipow(Int(p), 2 * n);
        const Rat b = (Y * Rat(-X) + 1) / Rat(p2n);
        const bool b_integral = is_integer(b);
        const QuadReal alpha = alpha_at(spec, 2 * n);
        const QuadReal beta_disp =
            (QuadReal(Y) * alpha + QuadReal(b)) / (q(p2n) * alpha - q(X));
        const QuadReal& beta_h = heis.at_index(static_cast<long>(2 * n));
        const MobiusPair normalized = ab_normalized(TraceLine{n, p2n, -X}, alpha);
        const QuadReal beta_n = normalized.apply(alpha);
        RelateLevel lvl{n,
                        MobiusPair{Y.get_num(), b_integral ? b.get_num() : Int(0), p2n, -X},
                        b_integral,
                        beta_disp,
                        beta_h,
                        beta_disp == beta_h,
                        beta_n,
                        beta_n.frac() == beta_h.frac(),
                        beta_n.frac() == (-beta_h).frac()};
        report.levels.push_back(std::move(lvl));
    }
    return report;
}

bool relate_check(const SolenoidSpec& spec, std::size_t N) { return relate_report(spec, N).ok(); }

SearchResult certificate_search(const SolenoidSpec& a, const SolenoidSpec& b, const SearchBounds& bounds) {
    if (a.p != b.p) {
        return Impossible{"K_1 groups Z[1/" + std::to_string(a.p) + "]^2 and Z[1/" + std::to_string(b.p) +
                          "]^2 differ, so the solenoids are not Morita equivalent"};
    }
    std::size_t limit = 2 * bounds.entries;
    if (const auto known = b.digits.known_length()) {
        limit = std::min(limit, *known);
    }
    std::vector<Int> c0_order;
    for (long c = 1; c <= bounds.max_c0; ++c) {
        c0_order.emplace_back(c);
        c0_order.emplace_back(-c);
    }
    std::size_t tried = 0;
    for (std::size_t k = 0; k <= bounds.max_k; k += 2) {
        SolenoidSpec shifted;
        try {
            shifted = truncate_front(a, k);
        } catch (const PrecisionError&) {
            break;
        }
        for (const Int& c0 : c0_order) {
            for (long d = -bounds.max_d0; d <= bounds.max_d0; ++d) {
                ProjectionData proj{1, c0, Int(d)};
                const QuadReal tr = proj.trace(shifted.theta);
                if (tr <= QuadReal(0)) {
                    continue;
                }
                proj.m = tr.floor() + 1;
                if (!condition_check(a.p, proj, shifted.digits.at(0))) {
                    continue;
                }
                ++tried;
                try {
                    const SolenoidSpec partner =
                        from_even_entries(a.p, projection_partner(shifted, proj, (limit + 1) / 2));
                    if (equal_in_xi(partner, b, limit)) {
                        return Certificate{proj, k, limit + 1};
                    }
                } catch (const PrecisionError&) {
                    // a's digit stream is too short for this cell
                }
            }
        }
    }
    return Inconclusive{tried};
}

}  // namespace nsol
