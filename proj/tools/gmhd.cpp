// gmhd command-line front end; links only the C API.

#include "gmhd/gmhd.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

int fail(const char* what) {
    std::cerr << "error: " << what << '\n';
    return 1;
}

int print_owned(char* s) {
    std::cout << s << '\n';
    gmhd_free_string(s);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized MHD pseudo-spectral solver and inequality checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gmhd_version()));

    std::string config, out_dir;
    auto* run = app.add_subcommand("run", "Run a job from a JSON config");
    run->add_option("config", config, "Job config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--output-dir", out_dir, "Override output_dir (else GMHD_OUTPUT_DIR, else config)");

    std::string suite;
    std::uint64_t seed = 7;
    int grid = 0;
    std::string verify_dir = ".";
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "partition | bernstein | lemma1 | gn | energy | exponents | all")
        ->required()
        ->check(CLI::IsMember({"partition", "bernstein", "lemma1", "gn", "energy", "exponents", "all"}));
    verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
    verify->add_option("--grid", grid, "Grid size N (default: per suite)");
    verify->add_option("--output-dir", verify_dir, "Directory for reports")->capture_default_str();

    double alpha = 0, beta = 0, gamma = 0;
    int n = 2;
    std::string family = "log_power";
    auto* classify = app.add_subcommand("classify", "Classify a dissipation regime");
    classify->add_option("--alpha", alpha)->required();
    classify->add_option("--beta", beta)->capture_default_str();
    classify->add_option("--gamma", gamma)->required();
    classify->add_option("--n", n)->required();
    classify->add_option("--family", family)->capture_default_str();

    double k = 0, lambda = 0;
    int en = 2;
    auto* expo = app.add_subcommand("exponents", "Evaluate the interpolation exponent set");
    expo->add_option("--k", k)->required();
    expo->add_option("--n", en)->required();
    expo->add_option("--lambda", lambda)->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        int code = 1;
        if (gmhd_run_job(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &code) != GMHD_OK)
            return fail(gmhd_last_error());
        if (code != 0) std::cerr << (code == 2 ? "blow-up: " : "error: ") << gmhd_last_error() << '\n';
        return code;
    }
    if (verify->parsed()) {
        int passed = 0;
        char* summary = nullptr;
        if (gmhd_verify(suite.c_str(), seed, grid, verify_dir.c_str(), &passed, &summary) != GMHD_OK)
            return fail(gmhd_last_error());
        const auto reports = nlohmann::json::parse(summary);
        gmhd_free_string(summary);
        for (const auto& r : reports) {
            std::cout << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << r["suite"].get<std::string>() << '\n';
            for (const auto& c : r["checks"])
                if (!c["passed"].get<bool>()) std::cout << "  failed: " << c["name"].get<std::string>() << '\n';
        }
        return passed ? 0 : 1;
    }
    if (classify->parsed()) {
        char* out = nullptr;
        if (gmhd_classify_json(alpha, beta, family.c_str(), gamma, n, &out) != GMHD_OK)
            return fail(gmhd_last_error());
        return print_owned(out);
    }
    if (expo->parsed()) {
        char* out = nullptr;
        if (gmhd_exponents_json(k, en, lambda, &out) != GMHD_OK) return fail(gmhd_last_error());
        return print_owned(out);
    }
    return 1;
}
