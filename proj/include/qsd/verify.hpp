#pragma once

#include <string>
#include <vector>

namespace qsd {

struct CheckResult {
    int index = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    bool fast = false;  // skip the POVM-oracle-heavy checks (5, 8, 9)
};

inline constexpr int kNumAcceptanceChecks = 10;

/// Runs acceptance check `index` (1-based). Deterministic: every randomized
/// check seeds its own generator.
CheckResult run_acceptance_check(int index, const VerifyOptions& options = {});

/// Runs all checks in order; skipped checks (fast mode) count as neither pass
/// nor fail for the caller's exit-code purposes.
std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& options = {});

}  // namespace qsd
