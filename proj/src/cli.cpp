#include "nsol/cli.hpp"

#include "nsol/json_io.hpp"
#include "nsol/multiplier.hpp"
#include "nsol/suite.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace nsol {

namespace {

struct Outcome {
    json inputs;
    json result;
    bool pass = true;
};

/// Input errors that should surface as exit 2 with a message.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpecOpts {
    std::optional<unsigned long> p;
    std::string theta;
    std::string digits = "x=1";
    std::string file;

    void attach(CLI::App* app, const std::string& suffix = "") {
        app->add_option("--p" + suffix, p, "prime");
        app->add_option("--theta" + suffix, theta, "theta as (a + b*sqrt(D))/c");
        app->add_option("--digits" + suffix, digits, "x=<rational> or a digit list d0,d1,...")->capture_default_str();
        app->add_option("--spec" + suffix, file, "spec JSON file {p, theta, digits}");
    }

    SolenoidSpec build() const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) {
                throw UsageError("cannot read spec file " + file);
            }
            return spec_from_json(json::parse(in));
        }
        if (!p || theta.empty()) {
            throw UsageError("a spec needs --p and --theta (or --spec FILE)");
        }
        return SolenoidSpec(*p, QuadReal::parse(theta), parse_digits(*p, digits));
    }
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("SOLENOID_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw UsageError(std::string("SOLENOID_SEED is not an unsigned integer: ") + s);
        }
    }
    return 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

SeqWindow window_from(const std::string& values, long start, long step) {
    SeqWindow w;
    long idx = start;
    for (const auto& v : split(values, ';')) {
        w.push(idx, QuadReal::parse(v));
        idx += step;
    }
    return w;
}

GammaElem random_gamma(std::mt19937_64& g, unsigned long p) {
    auto pf = [&] {
        return PFrac(p, Int(static_cast<long>(g() % 81) - 40), static_cast<unsigned long>(g() % 5));
    };
    const PFrac a = pf();
    return {a, pf()};
}

json gamma_json(const GammaElem& g) { return json::array({g.first.str(), g.second.str()}); }

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Morita partners of noncommutative solenoids: exact checks and bimodule numerics", "nsolenoid"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    std::optional<std::uint64_t> seed_opt;
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed_opt, "seed for randomized checks (default: $SOLENOID_SEED or 0)");

    std::string command;
    std::function<Outcome(std::uint64_t)> action;
    auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome(std::uint64_t)> fn) {
        sub->callback([&command, &action, name = std::move(name), fn = std::move(fn)] {
            command = name;
            action = fn;
        });
    };

    // ---- padic
    auto* padic = app.add_subcommand("padic", "p-adic expansions");
    padic->require_subcommand(1);
    unsigned long pa_p = 0;
    std::string pa_x;
    long pa_lo = 0, pa_hi = 0;
    for (const char* name : {"inv", "frac", "trunc"}) {
        auto* s = padic->add_subcommand(name);
        s->add_option("--p", pa_p)->required();
        s->add_option("--x", pa_x, "rational number")->required();
        if (std::string(name) == "trunc") {
            s->add_option("--lo", pa_lo)->required();
            s->add_option("--hi", pa_hi)->required();
        }
    }
    bind(padic->get_subcommand("inv"), "padic inv", [&](std::uint64_t) {
        const PAdic x = PAdic::from_rational(pa_p, parse_rat(pa_x));
        if (x.is_zero()) {
            throw UsageError("cannot invert zero");
        }
        const PAdic y = x.invert();
        return Outcome{json{{"p", pa_p}, {"x", pa_x}},
                       json{{"x", to_json(x)}, {"inverse", to_json(y)}, {"inverse_value", to_string(y.value())}},
                       x * y == PAdic::from_rational(pa_p, 1)};
    });
    bind(padic->get_subcommand("frac"), "padic frac", [&](std::uint64_t) {
        const PAdic x = PAdic::from_rational(pa_p, parse_rat(pa_x));
        return Outcome{json{{"p", pa_p}, {"x", pa_x}}, json{{"x", to_json(x)}, {"frac_part", x.frac_part().str()}}};
    });
    bind(padic->get_subcommand("trunc"), "padic trunc", [&](std::uint64_t) {
        const PAdic x = PAdic::from_rational(pa_p, parse_rat(pa_x));
        return Outcome{json{{"p", pa_p}, {"x", pa_x}, {"lo", pa_lo}, {"hi", pa_hi}},
                       json{{"x", to_json(x)}, {"sum", x.truncate_sum(pa_lo, pa_hi).str()}}};
    });

    // ---- solenoid
    auto* sol = app.add_subcommand("solenoid", "parameter sequences alpha_n");
    sol->require_subcommand(1);
    SpecOpts sol_spec;
    std::size_t sol_n = 0;
    auto* alpha = sol->add_subcommand("alpha");
    sol_spec.attach(alpha);
    alpha->add_option("--n", sol_n)->required();
    bind(alpha, "solenoid alpha", [&](std::uint64_t) {
        const SolenoidSpec s = sol_spec.build();
        const QuadReal a = alpha_at(s, sol_n);
        return Outcome{json{{"spec", to_json(s)}, {"n", sol_n}},
                       json{{"alpha_n", a.str()}, {"alpha_n_mod_1", a.frac().str()}, {"window", to_json(alpha_window(s, sol_n))}}};
    });
    unsigned long coh_p = 0;
    std::string coh_values;
    long coh_start = 0;
    unsigned coh_step = 1;
    auto* coh = sol->add_subcommand("check-coherence");
    coh->add_option("--p", coh_p)->required();
    coh->add_option("--values", coh_values, "window values separated by ';'")->required();
    coh->add_option("--start", coh_start, "index of the first value")->capture_default_str();
    coh->add_option("--step", coh_step)->check(CLI::IsMember({1, 2}))->capture_default_str();
    bind(coh, "solenoid check-coherence", [&](std::uint64_t) {
        const SeqWindow w = window_from(coh_values, coh_start, coh_step);
        const CoherenceReport rep = coherence_check(w, coh_p, coh_step);
        json pairs = json::array();
        for (const auto& pr : rep.pairs) {
            pairs.push_back(json{{"from", pr.from}, {"to", pr.to}, {"defect", pr.defect.str()}, {"integral", pr.integral}});
        }
        return Outcome{json{{"p", coh_p}, {"window", to_json(w)}, {"step", coh_step}}, json{{"pairs", pairs}}, rep.ok()};
    });
    unsigned long fe_p = 0;
    std::string fe_values;
    auto* fe = sol->add_subcommand("from-even");
    fe->add_option("--p", fe_p)->required();
    fe->add_option("--values", fe_values, "entries 0, 2, 4, ... separated by ';'")->required();
    bind(fe, "solenoid from-even", [&](std::uint64_t) {
        const SeqWindow w = window_from(fe_values, 0, 2);
        Outcome o{json{{"p", fe_p}, {"window", to_json(w)}}, json{}};
        try {
            const SolenoidSpec s = from_even_entries(fe_p, w);
            o.result = json{{"spec", to_json(s)}, {"window", to_json(fill_odd_entries(fe_p, w))}};
        } catch (const CoherenceError& e) {
            o.result = json{{"error", e.what()}};
            o.pass = false;
        }
        return o;
    });

    // ---- multiplier
    auto* mul = app.add_subcommand("multiplier", "2-cocycle identities");
    mul->require_subcommand(1);
    SpecOpts mul_spec;
    std::size_t mul_count = 1000;
    for (const char* name : {"check-cocycle", "check-annihilator", "check-eta-psi"}) {
        auto* s = mul->add_subcommand(name);
        mul_spec.attach(s);
        s->add_option("--count", mul_count)->capture_default_str();
    }
    auto multiplier_check = [&](const std::string& which, std::uint64_t seed) {
        const SolenoidSpec s = mul_spec.build();
        std::mt19937_64 g(derive_seed(seed, 100));
        json bad = json::array();
        std::size_t failures = 0;
        const PhaseMap psi = [&s](const GammaElem& a, const GammaElem& b) { return psi_alpha(s, a, b); };
        std::optional<SolenoidSpec> beta;
        std::optional<PAdic> x;
        if (which != "check-cocycle") {
            x = s.digits.padic();
            if (!x) {
                throw UsageError("the lattice checks need x_alpha as a rational (use --digits x=...)");
            }
            if (which == "check-eta-psi") {
                beta = heisenberg_partner_spec(s);
            }
        }
        for (std::size_t i = 0; i < mul_count; ++i) {
            const GammaElem a = random_gamma(g, s.p), b = random_gamma(g, s.p), c = random_gamma(g, s.p);
            bool ok;
            json tuple;
            if (which == "check-cocycle") {
                ok = cocycle_defect(psi, a, b, c).is_trivial() && psi(a, GammaElem::zero(s.p)).is_trivial();
                tuple = json{{"r", gamma_json(a)}, {"s", gamma_json(b)}, {"t", gamma_json(c)}};
            } else if (which == "check-annihilator") {
                ok = rho(iota_embed(*x, s.theta, a), lambda_embed(*x, s.theta, b)).is_trivial();
                tuple = json{{"r", gamma_json(a)}, {"s", gamma_json(b)}};
            } else {
                ok = eta_bar(lambda_embed(*x, s.theta, a), lambda_embed(*x, s.theta, b)) == psi_alpha(*beta, a, b);
                tuple = json{{"s12", gamma_json(a)}, {"s34", gamma_json(b)}};
            }
            if (!ok) {
                ++failures;
                if (bad.size() < 20) {
                    bad.push_back(std::move(tuple));
                }
            }
        }
        return Outcome{json{{"spec", to_json(s)}, {"count", mul_count}, {"seed", seed}},
                       json{{"checked", mul_count}, {"failures", failures}, {"violations", bad}}, failures == 0};
    };
    for (const char* name : {"check-cocycle", "check-annihilator", "check-eta-psi"}) {
        bind(mul->get_subcommand(name), std::string("multiplier ") + name,
             [&, which = std::string(name)](std::uint64_t seed) { return multiplier_check(which, seed); });
    }

    // ---- morita (and the partner/check aliases)
    SpecOpts mo_spec, mo_spec_b;
    std::size_t mo_entries = 4;
    long mo_c0 = 1, mo_d0 = 0;
    std::optional<long> mo_m;
    SearchBounds bounds;

    auto heisenberg = [&](std::uint64_t) {
        const SolenoidSpec s = mo_spec.build();
        const SeqWindow w = heisenberg_partner(s, mo_entries);
        const CoherenceReport rep = coherence_check(w, s.p, 1);
        return Outcome{json{{"spec", to_json(s)}, {"entries", mo_entries}},
                       json{{"window", to_json(w)}, {"partner_spec", to_json(heisenberg_partner_spec(s))},
                            {"coherent", rep.ok()}},
                       rep.ok()};
    };
    auto projection = [&](std::uint64_t) {
        const SolenoidSpec s = mo_spec.build();
        ProjectionData proj{1, Int(mo_c0), Int(mo_d0)};
        proj.m = mo_m ? Int(*mo_m) : proj.trace(s.theta).floor() + 1;
        Outcome o{json{{"spec", to_json(s)}, {"proj", to_json(proj)}, {"entries", mo_entries}}, json{}};
        try {
            proj.validate(s.theta);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        try {
            json stages = json::array();
            SeqWindow w;
            for (const auto& st : projection_stages(s, proj, mo_entries)) {
                stages.push_back(json{{"n", st.line.n},
                                      {"c2n", to_string(st.line.c2n)},
                                      {"d2n", to_string(st.line.d2n)},
                                      {"mobius", to_json(st.mobius)},
                                      {"beta", st.beta.str()}});
                w.push(static_cast<long>(2 * st.line.n), st.beta);
            }
            const CoherenceReport rep = coherence_check(w, s.p, 2);
            o.result = json{{"stages", stages}, {"window", to_json(w)}, {"coherent", rep.ok()}};
            o.pass = rep.ok();
        } catch (const ConditionError& e) {
            o.result = json{{"condition", false}, {"error", e.what()}};
            o.pass = false;
        }
        return o;
    };

    auto* mo = app.add_subcommand("morita", "partner constructions");
    mo->require_subcommand(1);
    auto* mo_h = mo->add_subcommand("heisenberg");
    auto* mo_p = mo->add_subcommand("projection");
    auto* mo_r = mo->add_subcommand("relate");
    auto* mo_c = mo->add_subcommand("certify");
    for (auto* s : {mo_h, mo_p, mo_r, mo_c}) {
        mo_spec.attach(s);
        s->add_option("--entries", mo_entries, "window length N")->capture_default_str();
    }
    for (auto* s : {mo_p}) {
        s->add_option("--c0", mo_c0)->capture_default_str();
        s->add_option("--d0", mo_d0)->capture_default_str();
        s->add_option("--m", mo_m, "matrix size (default floor(trace) + 1)");
    }
    mo_spec_b.attach(mo_c, "-b");
    mo_c->add_option("--max-c0", bounds.max_c0)->capture_default_str();
    mo_c->add_option("--max-d0", bounds.max_d0)->capture_default_str();
    mo_c->add_option("--max-k", bounds.max_k)->capture_default_str();
    bind(mo_h, "morita heisenberg", heisenberg);
    bind(mo_p, "morita projection", projection);
    bind(mo_r, "morita relate", [&](std::uint64_t) {
        const SolenoidSpec s = mo_spec.build();
        const RelateReport rep = relate_report(s, mo_entries);
        return Outcome{json{{"spec", to_json(s)}, {"entries", mo_entries}}, to_json(rep), rep.ok()};
    });
    bind(mo_c, "morita certify", [&](std::uint64_t) {
        const SolenoidSpec a = mo_spec.build();
        const SolenoidSpec b = mo_spec_b.build();
        bounds.entries = mo_entries;
        return Outcome{json{{"a", to_json(a)},
                            {"b", to_json(b)},
                            {"bounds",
                             {{"max_c0", bounds.max_c0}, {"max_d0", bounds.max_d0}, {"max_k", bounds.max_k},
                              {"entries", bounds.entries}}}},
                       to_json(certificate_search(a, b, bounds))};
    });

    auto* partner = app.add_subcommand("partner", "alias: morita heisenberg / projection");
    partner->require_subcommand(1);
    auto* pa_h = partner->add_subcommand("heisenberg");
    auto* pa_pr = partner->add_subcommand("projection");
    for (auto* s : {pa_h, pa_pr}) {
        mo_spec.attach(s);
        s->add_option("--entries", mo_entries)->capture_default_str();
    }
    pa_pr->add_option("--c0", mo_c0)->capture_default_str();
    pa_pr->add_option("--d0", mo_d0)->capture_default_str();
    pa_pr->add_option("--m", mo_m);
    bind(pa_h, "morita heisenberg", heisenberg);
    bind(pa_pr, "morita projection", projection);

    auto* check = app.add_subcommand("check", "single exact checks");
    check->require_subcommand(1);
    unsigned long ck_p = 2, ck_x0 = 0;
    long ck_c0 = 1, ck_d0 = 0;
    auto* cond = check->add_subcommand("condition", "gcd(c0 p, d0 - c0 x0) = 1");
    cond->add_option("--p", ck_p)->required();
    cond->add_option("--c0", ck_c0)->required();
    cond->add_option("--d0", ck_d0)->required();
    cond->add_option("--x0", ck_x0)->required();
    bind(cond, "check condition", [&](std::uint64_t) {
        const ProjectionData proj{1, Int(ck_c0), Int(ck_d0)};
        const bool holds = condition_check(ck_p, proj, ck_x0);
        const Int g = ext_gcd(Int(ck_c0) * ck_p, Int(ck_d0) - Int(ck_c0) * ck_x0).g;
        return Outcome{json{{"p", ck_p}, {"c0", std::to_string(ck_c0)}, {"d0", std::to_string(ck_d0)}, {"x0", ck_x0}},
                       json{{"gcd", to_string(g)}, {"holds", holds}}, holds};
    });

    // ---- bimodule
    auto* bim = app.add_subcommand("bimodule", "finite-stage bimodule identities");
    bim->require_subcommand(1);
    auto* verify = bim->add_subcommand("verify");
    SpecOpts bim_spec;
    long bim_c0 = 1, bim_d0 = 0;
    std::size_t bim_n = 0;
    SamplePlan plan;
    double bim_tol = 1e-9;
    bim_spec.attach(verify);
    verify->add_option("--c0", bim_c0)->capture_default_str();
    verify->add_option("--d0", bim_d0)->capture_default_str();
    verify->add_option("--n", bim_n)->capture_default_str();
    verify->add_option("--points", plan.points, "random points per trial")->capture_default_str();
    verify->add_option("--functions", plan.functions, "random trials")->capture_default_str();
    verify->add_option("--grid", plan.grid)->capture_default_str();
    verify->add_option("--tolerance", bim_tol)->capture_default_str();
    bind(verify, "bimodule verify", [&](std::uint64_t seed) {
        const SolenoidSpec s = bim_spec.build();
        ProjectionData proj{1, Int(bim_c0), Int(bim_d0)};
        proj.m = proj.trace(s.theta).floor() + 1;
        plan.seed = seed;
        Outcome o{json{{"spec", to_json(s)}, {"proj", to_json(proj)}, {"n", bim_n}, {"seed", seed},
                       {"points", plan.points}, {"functions", plan.functions}, {"grid", plan.grid}},
                  json{}};
        try {
            const IdentityReport rep = identity_suite(s, proj, bim_n, plan);
            o.result = to_json(rep, bim_tol);
            o.pass = rep.pass(bim_tol);
        } catch (const ConditionError& e) {
            o.result = json{{"condition", false}, {"error", e.what()}};
            o.pass = false;
        }
        return o;
    });

    // ---- suite
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    double suite_tol = 1e-9;
    std::vector<int> only;
    suite->add_option("--tolerance", suite_tol, "bimodule tolerance")->capture_default_str();
    suite->add_option("--only", only, "criterion ids")->delimiter(',')->check(CLI::Range(1, 10));
    bind(suite, "suite", [&](std::uint64_t seed) {
        const auto results = run_acceptance(SuiteConfig{seed, suite_tol}, only);
        bool all = true;
        for (const auto& r : results) {
            all = all && r.pass();
        }
        return Outcome{json{{"seed", seed}, {"tolerance", suite_tol}, {"only", only}},
                       json{{"criteria", to_json(results)}}, all};
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        app.exit(e, o, er);
        err << er.str() << o.str();
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }
    if (!action) {
        err << app.help();
        return kExitUsage;
    }

    Outcome o;
    std::uint64_t seed = 0;
    try {
        seed = seed_opt ? *seed_opt : default_seed();
        o = action(seed);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }

    json report{{"schema", kReportSchema}, {"command", command}, {"inputs", o.inputs}, {"result", o.result},
                {"pass", o.pass}};
    if (format == "text") {
        render_text(report, "", out);
    } else {
        out << report.dump(2) << '\n';
    }
    return o.pass ? kExitPass : kExitCheckFailed;
}

}  // namespace nsol
