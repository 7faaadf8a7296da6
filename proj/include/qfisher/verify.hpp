#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfisher/closed_forms.hpp"

namespace qfisher {

struct VerifyOptions {
    std::uint64_t seed = 42;
    int samples = 1000;
    bool grid_only = false;
};

struct CheckResult {
    std::string name;
    bool hard = true; // hard checks fail the run; soft ones only warn
    bool passed = true;
    double worst = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifySummary {
    VerifyOptions options;
    std::vector<CheckResult> checks;
    std::vector<FormulaVerdict> verdicts;
    double elapsed_seconds = 0.0;

    int hard_failures() const;
    int warnings() const;
    bool passed() const { return hard_failures() == 0; }
    std::string report_text() const;
};

// Runs the invariant suite (engine-equivalence sampling, derivative checks,
// purity laws, Werner consistency) plus the closed-form errata grids.
// grid_only skips the random-sampling checks.
VerifySummary run_verification(const VerifyOptions& options);

} // namespace qfisher
