#include "gmhd/gmhd.h"

#include "gmhd/errors.hpp"
#include "gmhd/jobs.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace gmhd;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
gmhd_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return GMHD_OK;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return GMHD_ERR_CONFIG;
    } catch (const ParameterError& e) {
        g_last_error = e.what();
        return GMHD_ERR_PARAMETER;
    } catch (const UnsupportedError& e) {
        g_last_error = e.what();
        return GMHD_ERR_UNSUPPORTED;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return GMHD_ERR_IO;
    } catch (const DegenerateSample& e) {
        g_last_error = e.what();
        return GMHD_ERR_DEGENERATE;
    } catch (const BlowUpSignal& e) {
        g_last_error = e.what();
        return GMHD_ERR_BLOWUP;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return GMHD_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GMHD_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return GMHD_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw ParameterError(std::string(what) + " must not be NULL");
}

} // namespace

struct gmhd_solver {
    SolverConfig config;
    Stepper stepper;
    State state;
    std::vector<DiagRecord> records;
};

extern "C" {

const char* gmhd_last_error(void) { return g_last_error.c_str(); }
const char* gmhd_version(void) { return "0.1.0"; }
void gmhd_free_string(char* s) { std::free(s); }

gmhd_status gmhd_run_job(const char* config_path, const char* output_dir, int* exit_code) {
    return guarded([&] {
        require(config_path, "config_path");
        require(exit_code, "exit_code");
        std::optional<std::filesystem::path> dir;
        if (output_dir) dir = output_dir;
        const RunOutcome r = cmd_run(config_path, dir);
        *exit_code = r.exit_code;
        g_last_error = r.exit_code == kExitOk ? std::string() : r.message;
    });
}

gmhd_status gmhd_verify(const char* suite, uint64_t seed, int grid, const char* output_dir, int* passed,
                        char** summary_json) {
    return guarded([&] {
        require(suite, "suite");
        require(passed, "passed");
        std::optional<int> g;
        if (grid > 0) g = grid;
        const VerifyOutcome v = cmd_verify(suite, seed, g, output_dir ? output_dir : "");
        *passed = v.passed ? 1 : 0;
        if (summary_json) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : v.results) j.push_back(r.report);
            *summary_json = dup_string(j.dump(2));
        }
    });
}

gmhd_status gmhd_classify(double alpha, double beta, const char* family, double gamma, int n, gmhd_regime* out) {
    return guarded([&] {
        require(out, "out");
        const RegimeReport r = regime_classify(alpha, beta, family ? family : "log_power", gamma, n);
        *out = {r.main_condition, r.wu_condition, r.tao_condition};
    });
}

gmhd_status gmhd_classify_json(double alpha, double beta, const char* family, double gamma, int n, char** json) {
    return guarded([&] {
        require(json, "json");
        *json = dup_string(cmd_classify(alpha, beta, gamma, n, family ? family : "log_power"));
    });
}

gmhd_status gmhd_exponents_eval(double k, int n, double lambda, gmhd_exponents* out) {
    return guarded([&] {
        require(out, "out");
        const ExponentSet e = exponents(k, n, lambda);
        *out = {e.a, e.two_delta, e.delta, e.A, e.B, e.C, e.xi_grad, e.eta_hk};
    });
}

gmhd_status gmhd_exponents_json(double k, int n, double lambda, char** json) {
    return guarded([&] {
        require(json, "json");
        *json = dup_string(cmd_exponents(k, n, lambda));
    });
}

gmhd_status gmhd_solver_create(const char* config_json, gmhd_solver** out) {
    return guarded([&] {
        require(config_json, "config_json");
        require(out, "out");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(config_json);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON: ") + e.what(), "/");
        }
        const JobConfig job = parse_job_config(j);
        auto* s = new gmhd_solver{job.solver, Stepper(job.solver), init_fields(job.init, job.solver.grid), {}};
        update_running(s->records, sample_record(s->state.u, s->state.b, s->state.t, job.solver.multiplier,
                                                 job.solver.resolved_hk_order()));
        *out = s;
    });
}

void gmhd_solver_destroy(gmhd_solver* s) { delete s; }

gmhd_status gmhd_solver_step(gmhd_solver* s, int steps) {
    return guarded([&] {
        require(s, "solver");
        if (steps < 0) throw ParameterError("steps must be >= 0");
        for (int i = 0; i < steps; ++i) {
            s->state = s->stepper.step(s->state, s->stepper.choose_dt(s->state));
            update_running(s->records, sample_record(s->state.u, s->state.b, s->state.t, s->config.multiplier,
                                                     s->config.resolved_hk_order()));
        }
    });
}

gmhd_status gmhd_solver_time(const gmhd_solver* s, double* t) {
    return guarded([&] {
        require(s, "solver");
        require(t, "t");
        *t = s->state.t;
    });
}

gmhd_status gmhd_solver_diagnostics(const gmhd_solver* s, char** csv_row) {
    return guarded([&] {
        require(s, "solver");
        require(csv_row, "csv_row");
        *csv_row = dup_string(diag_csv_row(s->records.back()));
    });
}

gmhd_status gmhd_diag_header(char** csv_header) {
    return guarded([&] {
        require(csv_header, "csv_header");
        *csv_header = dup_string(diag_csv_header());
    });
}

gmhd_status gmhd_solver_write_snapshot(const gmhd_solver* s, const char* header_path) {
    return guarded([&] {
        require(s, "solver");
        require(header_path, "header_path");
        write_snapshot(header_path, s->state);
    });
}

} // extern "C"
