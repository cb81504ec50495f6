#pragma once

// JSON forms shared by the CLI, the suite and the Python module. Exact values
// (integers, rationals, quadratic reals, Z[1/p] elements) are written as
// strings so no float rounding can creep in.

#include "nsol/bimodule.hpp"
#include "nsol/morita.hpp"
#include "nsol/padic.hpp"
#include "nsol/solenoid.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace nsol {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "nsolenoid.report/1";

/// {"p", "ord", "preperiod", "period"}; ord is null for zero.
json to_json(const PAdic& x);
PAdic padic_from_json(const json& j);

/// {"p", "theta", "digits"}; digits is a PAdic object, or {"p", "prefix"} for a finite stream.
json to_json(const SolenoidSpec& spec);
SolenoidSpec spec_from_json(const json& j);

/// [{"n", "value"}, ...]
json to_json(const SeqWindow& w);

json to_json(const ProjectionData& proj);
json to_json(const MobiusPair& mp);
json to_json(const RelateReport& r);
/// {"result": "certificate"|"impossible"|"inconclusive", ...}; a certificate
/// carries {"c0", "d0", "m", "k", "matched_entries"}.
json to_json(const SearchResult& r);
json to_json(const IdentityReport& r, double tolerance);

/// Digits given as "x=<rational>" (periodic expansion) or "d0,d1,..." (finite prefix).
DigitStream parse_digits(unsigned long p, std::string_view text);

}  // namespace nsol
