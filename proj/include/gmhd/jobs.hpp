#pragma once

// Batch entry points behind the CLI. Exit codes: 0 completed (or all checks
// passed), 1 error or failed checks, 2 blow-up signal during a run.

#include "gmhd/io.hpp"
#include "gmhd/suites.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace gmhd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBlowUp = 2;

struct RunOutcome {
    int exit_code = kExitOk;
    RunStatus status = RunStatus::completed;
    std::string message;
    std::filesystem::path output_dir;
    long steps = 0;
    double final_time = 0.0;
};

/// Runs a job already parsed. Writes diag.csv (streamed), snapshots/,
/// final_state.json + data and manifest.json into job.output_dir.
RunOutcome run_job(const JobConfig& job);

/// Loads the config, applies the output directory override (argument first,
/// then GMHD_OUTPUT_DIR) and runs. Errors become exit code 1 with a message.
RunOutcome cmd_run(const std::filesystem::path& config_path,
                   const std::optional<std::filesystem::path>& output_dir = {});

struct VerifyOutcome {
    bool passed = true;
    std::vector<suites::SuiteResult> results;
};

/// suite is one of suites::suite_names() or "all". Writes <suite>_report.json
/// and <suite>_samples.csv into output_dir when it is non-empty.
VerifyOutcome cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<int> grid,
                         const std::filesystem::path& output_dir);

/// JSON text of the regime report / exponent set.
std::string cmd_classify(double alpha, double beta, double gamma, int n, const std::string& family = "log_power");
std::string cmd_exponents(double k, int n, double lambda);

} // namespace gmhd
