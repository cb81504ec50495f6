#pragma once

// The ten acceptance criteria as seeded, reproducible checks.

#include "nsol/json_io.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nsol {

struct SuiteConfig {
    std::uint64_t seed = 0;
    double tolerance = 1e-9;  // bimodule identities only
};

struct CriterionResult {
    CriterionResult() = default;
    CriterionResult(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

    int id = 0;
    std::string name;
    bool checks_pass = false;
    double time_limit_s = 0;  // 0: no limit
    double seconds = 0;       // wall time; kept out of the JSON so reports are reproducible
    json detail;

    bool within_time() const { return time_limit_s <= 0 || seconds < time_limit_s; }
    bool pass() const { return checks_pass && within_time(); }
};

/// Runs the criteria listed in `only` (all of 1..10 when empty).
std::vector<CriterionResult> run_acceptance(const SuiteConfig& cfg, const std::vector<int>& only = {});

json to_json(const std::vector<CriterionResult>& results);

/// Deterministic per-stream seed derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nsol
