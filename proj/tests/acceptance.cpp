#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <iostream>
#include <limits>
#include <string>

#include "cartankit/verify.hpp"

using namespace cartankit;

// Runs every bundled verification criterion and prints one status line per
// check.  CARTANKIT_BUDGET (a node count or "max") raises the allowance for
// the extended enumeration, which is otherwise reported as skipped.
TEST_CASE("bundled verification suite") {
    VerifyOptions opts;
    if (const char* env = std::getenv("CARTANKIT_BUDGET")) {
        std::string text = env;
        if (text == "max") {
            opts.extended = true;
            opts.budget = std::numeric_limits<std::uint64_t>::max();
        } else {
            opts.budget = std::strtoull(text.c_str(), nullptr, 10);
        }
    }
    std::vector<CheckResult> results = run_verification(opts);
    REQUIRE(results.size() == 10);
    for (const CheckResult& r : results) {
        std::cout << format_check_line(r) << "\n";
        CAPTURE(r.number);
        CAPTURE(r.id);
        CAPTURE(r.detail);
        CHECK(r.status != CheckStatus::fail);
        if (r.limit_seconds > 0) CHECK(r.seconds < r.limit_seconds);
    }
}
