#pragma once

// Verification suites behind `gmhd verify`. Each suite returns a JSON report
// (named checks with value, tolerance and verdict, plus inequality summaries)
// and a CSV of per-sample values. Output depends only on (suite, seed, grid).

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmhd::suites {

struct SuiteResult {
    std::string suite;
    bool passed = true;
    nlohmann::json report;
    std::string csv;
};

/// partition, bernstein, lemma1, gn, energy, exponents.
const std::vector<std::string>& suite_names();

/// `grid` overrides the suite's default N; `samples` is the count per band.
/// Throws UnsupportedError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::optional<int> grid = {},
                      int samples = 32);

SuiteResult partition_suite(std::uint64_t seed, int n = 128);
SuiteResult bernstein_suite(std::uint64_t seed, int n = 128, int samples = 32);
SuiteResult lemma1_suite(std::uint64_t seed, int n = 256, int samples = 32);
SuiteResult gn_suite(std::uint64_t seed, int n = 128, int samples = 32);
SuiteResult energy_suite(std::uint64_t seed, int n = 32);
SuiteResult exponents_suite(std::uint64_t seed, int draws = 1000);

} // namespace gmhd::suites
