// Exercises libgmhd through its C header only.

#include "gmhd/gmhd.h"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

TEST_CASE("classify through the C API") {
    gmhd_regime r{};
    REQUIRE(gmhd_classify(2.0, 0.0, "log_power", 0.5, 2, &r) == GMHD_OK);
    CHECK(r.main_condition == 1);
    REQUIRE(gmhd_classify(2.0, 0.0, "log_power", 0.51, 2, &r) == GMHD_OK);
    CHECK(r.main_condition == 0);
    CHECK(gmhd_classify(2.0, 0.0, "bessel", 0.5, 2, &r) == GMHD_ERR_UNSUPPORTED);
    CHECK(std::string(gmhd_last_error()).find("bessel") != std::string::npos);
    CHECK(gmhd_classify(2.0, 0.0, "log_power", 0.5, 2, nullptr) == GMHD_ERR_PARAMETER);
}

TEST_CASE("exponents through the C API") {
    gmhd_exponents e{};
    REQUIRE(gmhd_exponents_eval(3.0, 2, 1.75, &e) == GMHD_OK);
    CHECK(std::abs(e.a - 0.75 / 4.75) <= 1e-12);
    CHECK(std::abs(e.B - 18.0 / 9.5) <= 1e-12);
    CHECK(gmhd_exponents_eval(3.0, 2, 1.4, &e) == GMHD_ERR_PARAMETER);
    CHECK(std::string(gmhd_last_error()) == "λ ≤ n/2·k/(k−1) = 1.5");

    char* json = nullptr;
    REQUIRE(gmhd_exponents_json(3.0, 2, 1.75, &json) == GMHD_OK);
    CHECK(std::string(json).find("\"delta\"") != std::string::npos);
    gmhd_free_string(json);
}

TEST_CASE("solver handle") {
    const char* cfg = R"({"solver": {"grid": {"dim": 2, "N": 16}, "dt_policy": {"dt": 0.01}, "t_end": 1.0},
                          "init": {"name": "orszag_tang_2d"}})";
    gmhd_solver* s = nullptr;
    REQUIRE(gmhd_solver_create(cfg, &s) == GMHD_OK);
    REQUIRE(gmhd_solver_step(s, 5) == GMHD_OK);
    double t = 0.0;
    REQUIRE(gmhd_solver_time(s, &t) == GMHD_OK);
    CHECK(t == doctest::Approx(0.05));
    char* row = nullptr;
    char* header = nullptr;
    REQUIRE(gmhd_solver_diagnostics(s, &row) == GMHD_OK);
    REQUIRE(gmhd_diag_header(&header) == GMHD_OK);
    CHECK(std::string(header).rfind("t,E_kin", 0) == 0);
    CHECK(std::string(row).rfind("0.05", 0) == 0);
    gmhd_free_string(row);
    gmhd_free_string(header);

    const fs::path dir = fs::temp_directory_path() / "gmhd_capi";
    fs::remove_all(dir);
    fs::create_directories(dir);
    REQUIRE(gmhd_solver_write_snapshot(s, (dir / "snap.json").c_str()) == GMHD_OK);
    CHECK(fs::file_size(dir / "snap_u0.f64") == 16 * 16 * 8);
    gmhd_solver_destroy(s);

    gmhd_solver* bad = nullptr;
    CHECK(gmhd_solver_create("{\"solver\": {\"grid\": {\"N\": 12}}}", &bad) == GMHD_ERR_CONFIG);
    CHECK(std::string(gmhd_last_error()).find("/solver/grid/N") != std::string::npos);
    CHECK(gmhd_solver_create("{not json", &bad) == GMHD_ERR_CONFIG);
    CHECK(bad == nullptr);
}

TEST_CASE("run and verify through the C API") {
    const fs::path dir = fs::temp_directory_path() / "gmhd_capi_run";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "c.json") << R"({"solver": {"grid": {"N": 16}, "dt_policy": {"dt": 0.01}, "t_end": 0.03}})";
    int code = -1;
    REQUIRE(gmhd_run_job((dir / "c.json").c_str(), (dir / "out").c_str(), &code) == GMHD_OK);
    CHECK(code == 0);
    CHECK(fs::exists(dir / "out" / "diag.csv"));

    int passed = 0;
    char* summary = nullptr;
    REQUIRE(gmhd_verify("exponents", 7, 0, nullptr, &passed, &summary) == GMHD_OK);
    CHECK(passed == 1);
    CHECK(std::string(summary).find("\"suite\": \"exponents\"") != std::string::npos);
    gmhd_free_string(summary);
    CHECK(gmhd_verify("bogus", 7, 0, nullptr, &passed, nullptr) == GMHD_ERR_UNSUPPORTED);
    CHECK(std::string(gmhd_version()).size() > 0);
}
