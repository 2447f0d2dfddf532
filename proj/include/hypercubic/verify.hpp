#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hypercubic {

struct SuiteResult {
    std::string name;
    bool soft = false;  // soft suites report but never fail a run
    bool passed = true;
    std::int64_t checks = 0;
    std::vector<std::string> notes;
    std::string failure;  // first failing case with its full inputs

    void fail(std::string what) {
        if (passed)
            failure = std::move(what);
        passed = false;
    }
};

struct VerifyOptions {
    unsigned threads = 1;
};

struct Suite {
    std::string name;
    int criterion;
    std::string summary;
    std::function<SuiteResult(const VerifyOptions&)> run;
};

// Seed of every pseudo-random draw made by the suites.
inline constexpr std::uint64_t kVerifySeed = 20240611;

// Cayley parameters exercised by the equivalence suites.
const std::vector<std::int64_t>& verify_cayley_parameters();

// In criterion order: oracle-equivalence, fiber-sets, bridge,
// one-point-window, identities, tamagawa, convergence, series-tail.
const std::vector<Suite>& verify_suites();

SuiteResult verify_oracle_equivalence(const VerifyOptions& opts);
SuiteResult verify_fiber_sets(const VerifyOptions& opts);
SuiteResult verify_bridge(const VerifyOptions& opts);
SuiteResult verify_one_point_window(const VerifyOptions& opts);
SuiteResult verify_identities(const VerifyOptions& opts);
SuiteResult verify_tamagawa(const VerifyOptions& opts);
SuiteResult verify_convergence(const VerifyOptions& opts);
SuiteResult verify_series_tail(const VerifyOptions& opts);

// "%.12Lg"
std::string format_real(long double x);

}  // namespace hypercubic
