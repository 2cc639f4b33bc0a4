#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartankit {

enum class CheckStatus { pass, fail, skip };

std::string to_string(CheckStatus s);

// One verification criterion: frozen published values recomputed from the
// bundled fixtures, most with an independent second route.
struct CheckResult {
    int number = 0;
    std::string id;
    CheckStatus status = CheckStatus::fail;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 means no wall-clock limit
};

struct VerifyOptions {
    // Backtracking node allowance for the extended enumeration; the check is
    // skipped, never failed, when this sits below the measured requirement.
    std::uint64_t budget = 10'000'000;
    bool extended = false;  // attempt the extended enumeration regardless
};

// Measured node requirement of the extended enumeration, rounded up.
extern const std::uint64_t kExtendedEnumerationFloor;

std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

// "PASS  3 weighted-bounds (0.00s) ..." style one-liner.
std::string format_check_line(const CheckResult& r);

}  // namespace cartankit
