#include "nsol/json_io.hpp"

#include <sstream>

namespace nsol {

namespace {

json digits_json(const Digits& ds) {
    json a = json::array();
    for (auto d : ds) {
        a.push_back(d);
    }
    return a;
}

Digits digits_from(const json& a) {
    Digits out;
    for (const auto& d : a) {
        out.push_back(d.get<unsigned long>());
    }
    return out;
}

}  // namespace

json to_json(const PAdic& x) {
    json j;
    j["p"] = x.prime();
    if (x.is_zero()) {
        j["ord"] = nullptr;
    } else {
        j["ord"] = x.ord();
    }
    j["preperiod"] = digits_json(x.preperiod());
    j["period"] = digits_json(x.period());
    return j;
}

PAdic padic_from_json(const json& j) {
    const auto p = j.at("p").get<unsigned long>();
    if (j.at("ord").is_null()) {
        return PAdic(p);
    }
    return PAdic::from_digits(p, j.at("ord").get<long>(), digits_from(j.at("preperiod")),
                              digits_from(j.at("period")));
}

json to_json(const SolenoidSpec& spec) {
    json j;
    j["p"] = spec.p;
    j["theta"] = spec.theta.str();
    if (spec.digits.padic()) {
        j["digits"] = to_json(*spec.digits.padic());
    } else {
        j["digits"] = json{{"p", spec.p}, {"prefix", digits_json(spec.digits.prefix())}};
    }
    return j;
}

SolenoidSpec spec_from_json(const json& j) {
    const auto p = j.at("p").get<unsigned long>();
    const QuadReal theta = QuadReal::parse(j.at("theta").get<std::string>());
    const json& d = j.at("digits");
    if (d.is_string()) {
        return SolenoidSpec(p, theta, parse_digits(p, d.get<std::string>()));
    }
    if (d.contains("prefix")) {
        return SolenoidSpec(p, theta, DigitStream::finite(p, digits_from(d.at("prefix"))));
    }
    return SolenoidSpec(p, theta, DigitStream::periodic(padic_from_json(d)));
}

json to_json(const SeqWindow& w) {
    json a = json::array();
    for (const auto& e : w.entries()) {
        a.push_back(json{{"n", e.index}, {"value", e.value.str()}});
    }
    return a;
}

json to_json(const ProjectionData& proj) {
    return json{{"m", to_string(proj.m)}, {"c0", to_string(proj.c0)}, {"d0", to_string(proj.d0)}};
}

json to_json(const MobiusPair& mp) {
    return json{{"a", to_string(mp.a)}, {"b", to_string(mp.b)}, {"c", to_string(mp.c)}, {"d", to_string(mp.d)},
                {"det", to_string(mp.det())}};
}

json to_json(const RelateReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        json lv{{"n", l.n},
                {"displayed", to_json(l.displayed)},
                {"b_integral", l.b_integral},
                {"beta_displayed", l.beta_displayed.str()},
                {"beta_heisenberg", l.beta_heisenberg.str()},
                {"exact_match", l.exact_match},
                {"beta_normalized", l.beta_normalized.str()},
                {"normalized_matches_heisenberg_mod1", l.normalized_matches_heisenberg_mod1},
                {"normalized_matches_negated_heisenberg_mod1", l.normalized_matches_negated_heisenberg_mod1}};
        levels.push_back(std::move(lv));
    }
    json dets = json::array();
    for (const auto& d : r.determinants()) {
        dets.push_back(to_string(d));
    }
    return json{{"levels", levels},
                {"displayed_determinants", dets},
                {"exact_agreement", r.exact_agreement()},
                {"agrees_up_to_sign_mod1", r.agrees_up_to_sign_mod1()}};
}

json to_json(const SearchResult& r) {
    if (const auto* c = std::get_if<Certificate>(&r)) {
        return json{{"result", "certificate"},
                    {"certificate",
                     {{"c0", to_string(c->proj.c0)},
                      {"d0", to_string(c->proj.d0)},
                      {"m", to_string(c->proj.m)},
                      {"k", c->k},
                      {"matched_entries", c->matched_entries}}}};
    }
    if (const auto* i = std::get_if<Impossible>(&r)) {
        return json{{"result", "impossible"}, {"reason", i->reason}};
    }
    const auto& inc = std::get<Inconclusive>(r);
    return json{{"result", "inconclusive"}, {"candidates_tried", inc.candidates_tried}};
}

json to_json(const IdentityReport& r, double tolerance) {
    json errs;
    for (const auto& [k, v] : r.max_error) {
        errs[k] = v;
    }
    json diag;
    for (const auto& [k, v] : r.diagnostics) {
        diag[k] = v;
    }
    return json{{"max_abs_error", errs},
                {"tolerance", tolerance},
                {"pass", r.pass(tolerance)},
                {"diagnostics", diag},
                {"corrupted_gamma_deviation", r.corrupted_gamma_deviation},
                {"samples", r.samples},
                {"hat_functions", r.hat_functions}};
}

DigitStream parse_digits(unsigned long p, std::string_view text) {
    if (text.starts_with("x=")) {
        return DigitStream::periodic(PAdic::from_rational(p, parse_rat(text.substr(2))));
    }
    Digits ds;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" ") == std::string::npos) {
            continue;
        }
        std::size_t used = 0;
        const long v = std::stol(item, &used);
        if (v < 0 || item.find_first_not_of(" ", used) != std::string::npos) {
            throw std::invalid_argument("bad digit '" + item + "'");
        }
        ds.push_back(static_cast<unsigned long>(v));
    }
    return DigitStream::finite(p, std::move(ds));
}

}  // namespace nsol
