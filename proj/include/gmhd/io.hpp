#pragma once

// Persistence: field snapshots (JSON header + one raw little-endian f64 file
// per component) and the JSON job configuration.
//
// Snapshot header:
//   {"dim": 2, "N": 64, "time": 0.5, "fields": ["u0", "u1", "b0", "b1"],
//    "dtype": "f64", "layout": "row-major physical samples",
//    "files": ["snap_u0.f64", ...]}
// Data files sit next to the header; "files" holds their names.

#include "gmhd/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gmhd {

void write_f64(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64(const std::filesystem::path& path, std::size_t expected);

/// Writes `header` plus `<stem>_<field>.f64` beside it.
void write_snapshot(const std::filesystem::path& header, const State& s);
State read_snapshot(const std::filesystem::path& header);

struct VerifyConfig {
    std::vector<std::string> suites{"all"};
    std::uint64_t seed = 7;
    std::optional<int> grid; ///< overrides each suite's default grid size
};

struct JobConfig {
    std::string mode = "run"; ///< run | verify | classify | exponents
    SolverConfig solver{};
    InitSpec init{};
    VerifyConfig verify{};
    std::filesystem::path output_dir = "gmhd_out";
    std::uint64_t rng_seed = 0;
};

/// Throws ConfigError carrying the JSON pointer of the offending field.
JobConfig parse_job_config(const nlohmann::json& j);
JobConfig load_job_config(const std::filesystem::path& path);

nlohmann::json to_json(const SolverConfig& c);
nlohmann::json to_json(const InitSpec& init);
nlohmann::json to_json(const JobConfig& c);
nlohmann::json to_json(const RegimeReport& r);
nlohmann::json to_json(const ExponentSet& e);

} // namespace gmhd
