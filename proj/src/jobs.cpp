#include "gmhd/jobs.hpp"

#include "gmhd/errors.hpp"
#include "gmhd/format.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

namespace gmhd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("short write to " + path.string());
}

json regime_warnings(const RegimeReport& r, const MultiplierSpec& m, int n) {
    json w = json::array();
    if (!r.main_condition) {
        std::string msg = "main_condition false:";
        if (m.alpha < 1.0 + 0.5 * n - 1e-12)
            msg += " alpha = " + format_double(m.alpha) + " < 1+n/2 = " + format_double(1.0 + 0.5 * n);
        if (m.g_family == GFamily::log_power && m.gamma > 0.5) msg += " gamma = " + format_double(m.gamma) + " > 1/2";
        msg += "; the regularity theorem does not cover this configuration";
        w.push_back(msg);
    }
    if (m.nu == 0.0) w.push_back("nu = 0: inviscid run, no dissipation");
    return w;
}

std::string step_tag(long step) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%08ld", step);
    return buf;
}

} // namespace

RunOutcome run_job(const JobConfig& job) {
    RunOutcome out;
    out.output_dir = job.output_dir;
    fs::create_directories(job.output_dir);

    if (job.mode == "verify") {
        bool passed = true;
        for (const auto& s : job.verify.suites)
            passed = cmd_verify(s, job.verify.seed, job.verify.grid, job.output_dir).passed && passed;
        out.exit_code = passed ? kExitOk : kExitError;
        out.message = passed ? "all checks passed" : "some checks failed";
        return out;
    }
    const int n = job.solver.grid.dim;
    const RegimeReport regime =
        regime_classify(job.solver.multiplier.alpha, 0.0, job.solver.multiplier.g_family, job.solver.multiplier.gamma, n);
    if (job.mode == "classify") {
        write_text(job.output_dir / "classify.json", to_json(regime).dump(2) + "\n");
        return out;
    }
    if (job.mode == "exponents") {
        const double k = job.solver.resolved_hk_order();
        const LambdaWindow w = lambda_window(k, n);
        write_text(job.output_dir / "exponents.json",
                   to_json(exponents(k, n, 0.5 * (w.lo + w.hi))).dump(2) + "\n");
        return out;
    }

    json manifest = {{"config", to_json(job)},
                     {"regime", to_json(regime)},
                     {"warnings", regime_warnings(regime, job.solver.multiplier, n)},
                     {"created_utc", utc_timestamp()},
                     {"outputs", {{"diag", "diag.csv"}, {"snapshots", "snapshots"}, {"final_state", "final_state.json"}}},
                     {"status", "running"}};
    const fs::path manifest_path = job.output_dir / "manifest.json";
    write_text(manifest_path, manifest.dump(2) + "\n");

    State initial = init_fields(job.init, job.solver.grid);

    std::ofstream diag(job.output_dir / "diag.csv", std::ios::trunc);
    if (!diag) throw IoError("cannot open diag.csv in " + job.output_dir.string());
    diag << diag_csv_header() << '\n';
    const fs::path snapdir = job.output_dir / "snapshots";
    if (job.solver.snapshot_every > 0) fs::create_directories(snapdir);

    RunSinks sinks;
    sinks.on_record = [&](const DiagRecord& r) {
        diag << diag_csv_row(r) << '\n';
        diag.flush();
        if (!diag) throw IoError("write to diag.csv failed");
    };
    sinks.on_snapshot = [&](const State& s, long step) {
        write_snapshot(snapdir / ("snap_" + step_tag(step) + ".json"), s);
    };
    const RunResult result = run(job.solver, std::move(initial), sinks);
    write_snapshot(job.output_dir / "final_state.json", result.final_state);

    out.status = result.status;
    out.steps = result.steps;
    out.final_time = result.final_state.t;
    out.exit_code = result.status == RunStatus::completed ? kExitOk : kExitBlowUp;
    out.message = result.status == RunStatus::completed ? "completed" : "blow-up signal: " + result.message;

    manifest["status"] = result.status == RunStatus::completed ? "completed" : "blow_up";
    manifest["message"] = out.message;
    manifest["steps"] = result.steps;
    manifest["final_time"] = result.final_state.t;
    manifest["exit_code"] = out.exit_code;
    write_text(manifest_path, manifest.dump(2) + "\n");
    return out;
}

RunOutcome cmd_run(const fs::path& config_path, const std::optional<fs::path>& output_dir) {
    RunOutcome out;
    try {
        JobConfig job = load_job_config(config_path);
        if (output_dir) job.output_dir = *output_dir;
        else if (const char* env = std::getenv("GMHD_OUTPUT_DIR"); env && *env) job.output_dir = env;
        out.output_dir = job.output_dir;
        return run_job(job);
    } catch (const std::exception& e) {
        out.exit_code = kExitError;
        out.message = e.what();
        return out;
    }
}

VerifyOutcome cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<int> grid,
                         const fs::path& output_dir) {
    std::vector<std::string> names;
    if (suite == "all") names = suites::suite_names();
    else names.push_back(suite);
    VerifyOutcome out;
    if (!output_dir.empty()) fs::create_directories(output_dir);
    for (const auto& name : names) {
        suites::SuiteResult r = suites::run_suite(name, seed, grid);
        if (!output_dir.empty()) {
            write_text(output_dir / (name + "_report.json"), r.report.dump(2) + "\n");
            write_text(output_dir / (name + "_samples.csv"), r.csv);
        }
        out.passed = out.passed && r.passed;
        out.results.push_back(std::move(r));
    }
    return out;
}

std::string cmd_classify(double alpha, double beta, double gamma, int n, const std::string& family) {
    return to_json(regime_classify(alpha, beta, family, gamma, n)).dump(2);
}

std::string cmd_exponents(double k, int n, double lambda) { return to_json(exponents(k, n, lambda)).dump(2); }

} // namespace gmhd
