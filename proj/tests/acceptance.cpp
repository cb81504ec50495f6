// One line per acceptance criterion. Usage: acceptance [id ...]; seed from SOLENOID_SEED.

#include "nsol/suite.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    nsol::SuiteConfig cfg;
    if (const char* s = std::getenv("SOLENOID_SEED")) {
        cfg.seed = std::stoull(s);
    }
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        only.push_back(std::stoi(argv[i]));
    }
    bool all = true;
    for (const auto& r : nsol::run_acceptance(cfg, only)) {
        std::printf("criterion %2d: %s  %s (%.3fs%s)\n", r.id, r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.within_time() ? "" : ", over time limit");
        if (!r.pass()) {
            std::printf("    detail: %s\n", r.detail.dump().c_str());
        }
        all = all && r.pass();
    }
    return all ? 0 : 1;
}
