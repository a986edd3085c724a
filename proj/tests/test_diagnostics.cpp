#include "gmhd/diagnostics.hpp"
#include "gmhd/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace gmhd;

namespace {

std::string error_of(auto&& f) {
    try {
        f();
    } catch (const ParameterError& e) {
        return e.what();
    }
    return {};
}

DiagRecord rec(double t, double lu, double grad, double hk) {
    DiagRecord r;
    r.t = t;
    r.lu_l2 = lu;
    r.grad_u_linf = grad;
    r.u_hk = hk;
    return r;
}

} // namespace

TEST_CASE("exponent set for k = 3, n = 2, lambda = 1.75") {
    const ExponentSet e = exponents(3.0, 2, 1.75);
    CHECK(std::abs(e.a - 0.75 / 4.75) <= 1e-12);
    CHECK(std::abs(e.two_delta - std::min(0.5 / 3.0, 0.75 / 4.75)) <= 1e-12);
    CHECK(std::abs(e.delta - 0.5 * 0.75 / 4.75) <= 1e-12);
    CHECK(std::abs(e.A - 6.0 / 9.5) <= 1e-12);
    CHECK(std::abs(e.B - 18.0 / 9.5) <= 1e-12);
    CHECK(std::abs(e.C - 3.5 / 4.75) <= 1e-12);
    CHECK(e.A * e.delta + e.B == doctest::Approx(1.9446).epsilon(1e-4));
    CHECK(e.xi(2.0) == 0.5);
    CHECK(e.eta(2.0) == 0.5);
}

TEST_CASE("exponent window errors name the bound") {
    CHECK(error_of([] { exponents(3.0, 2, 1.4); }) == "λ ≤ n/2·k/(k−1) = 1.5");
    CHECK(error_of([] { exponents(3.0, 2, 2.0); }) == "λ ≥ 1+n/2 = 2");
    CHECK(error_of([] { exponents(2.0, 2, 1.75); }) == "k ≤ 1+n/2 = 2");
    const LambdaWindow w = lambda_window(4.0, 3);
    CHECK(w.lo == doctest::Approx(2.0));
    CHECK(w.hi == doctest::Approx(2.5));
}

TEST_CASE("exponent invariants over a randomized sweep") {
    Rng rng = make_rng(1, "test/sweep", 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const int n = i % 2 ? 2 : 3;
        const double k = 1.0 + 0.5 * n + (7.0 - 0.5 * n) * (0.001 + 0.999 * unit(rng));
        const LambdaWindow w = lambda_window(k, n);
        const double lam = w.lo + (w.hi - w.lo) * (0.001 + 0.998 * unit(rng));
        const ExponentSet e = exponents(k, n, lam);
        CHECK(e.delta > 0.0);
        CHECK(e.B < 2.0);
        CHECK(e.C < 2.0);
        CHECK(e.A * e.delta + e.B <= 2.0);
        CHECK(e.a > 0.0);
        CHECK(e.a < 1.0);
        CHECK(e.young_exponent() * e.delta + e.young_exponent() <= 2.0);
    }
}

TEST_CASE("regime classifier") {
    CHECK(regime_classify(2.0, 0.0, GFamily::log_power, 0.5, 2).main_condition);
    const RegimeReport r = regime_classify(2.0, 0.0, GFamily::log_power, 0.3, 2);
    CHECK(r.main_condition);
    CHECK_FALSE(r.tao_condition);
    CHECK(regime_classify(1.25, 1.25, GFamily::log_power, 0.0, 3).wu_condition);
    CHECK_FALSE(regime_classify(1.25, 0.0, GFamily::log_power, 0.0, 3).wu_condition);
    const RegimeReport u = regime_classify(2.0, 1.0, GFamily::unity, 3.0, 2);
    CHECK(u.main_condition);
    CHECK(u.tao_condition);
    CHECK(u.wu_condition);
    CHECK_THROWS_AS(regime_classify(2.0, 0.0, "bessel", 0.5, 2), UnsupportedError);

    // monotone in gamma
    for (double alpha : {0.9, 1.0, 1.5, 2.0, 2.5})
        for (double beta : {0.0, 0.5, 1.0})
            for (double g = 0.0; g < 1.0; g += 0.01) {
                const RegimeReport hi = regime_classify(alpha, beta, GFamily::log_power, g + 0.01, 2);
                const RegimeReport lo = regime_classify(alpha, beta, GFamily::log_power, g, 2);
                CHECK((!hi.main_condition || lo.main_condition));
                CHECK((!hi.tao_condition || lo.tao_condition));
                CHECK((!hi.wu_condition || lo.wu_condition));
            }
}

TEST_CASE("running quantities") {
    SUBCASE("constant norms") {
        std::vector<DiagRecord> rs;
        for (int i = 0; i <= 10; ++i) update_running(rs, rec(0.1 * i, 2.0, 3.0, 1.0));
        for (const auto& r : rs) {
            CHECK(r.m_t == doctest::Approx(kE + 1.0));
            CHECK(r.i_l == doctest::Approx(2.0 * r.t));
            CHECK(r.i_inf == doctest::Approx(3.0 * r.t));
        }
    }
    SUBCASE("spike is held") {
        std::vector<DiagRecord> rs;
        for (int i = 0; i <= 10; ++i) update_running(rs, rec(i, 1.0, 1.0, i == 3 ? 50.0 : 1.0));
        for (int i = 3; i <= 10; ++i) CHECK(rs[i].m_t == doctest::Approx(kE + 50.0));
        CHECK(rs[2].m_t == doctest::Approx(kE + 1.0));
    }
    SUBCASE("random series against an independent trapezoid") {
        Rng rng = make_rng(4, "test/running", 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<DiagRecord> rs;
        std::vector<double> ts, ls;
        double t = 0.0;
        for (int i = 0; i < 200; ++i) {
            t += u(rng);
            const double l = 5.0 * u(rng);
            ts.push_back(t);
            ls.push_back(l);
            update_running(rs, rec(t, l, u(rng), u(rng)));
            CHECK(std::abs(rs.back().i_l - oracle::trapezoid(ts, ls)) <= 1e-12 * std::max(1.0, rs.back().i_l));
        }
        for (std::size_t i = 1; i < rs.size(); ++i) {
            CHECK(rs[i].m_t >= rs[i - 1].m_t);
            CHECK(rs[i].i_l >= rs[i - 1].i_l);
            CHECK(rs[i].i_inf >= rs[i - 1].i_inf);
        }
    }
    SUBCASE("time regression is rejected") {
        std::vector<DiagRecord> rs;
        update_running(rs, rec(1.0, 1, 1, 1));
        CHECK_THROWS_AS(update_running(rs, rec(0.5, 1, 1, 1)), ParameterError);
        CHECK(rs.size() == 1);
    }
}

TEST_CASE("energy ledger") {
    std::vector<DiagRecord> zero(3);
    for (int i = 0; i < 3; ++i) zero[i].t = i;
    for (double r : energy_ledger(zero)) CHECK(r == 0.0);
    CHECK_THROWS_AS(energy_ledger(std::span<const DiagRecord>(zero.data(), 1)), ParameterError);

    // E(t) = e^{-t}, dissipation e^{-t}: ledger equals the trapezoid error of that integral
    std::vector<DiagRecord> rs(101);
    std::vector<double> ts, ds;
    for (int i = 0; i <= 100; ++i) {
        rs[i].t = 0.01 * i;
        rs[i].e_kin = std::exp(-rs[i].t);
        rs[i].dissipation = std::exp(-rs[i].t);
        ts.push_back(rs[i].t);
        ds.push_back(rs[i].dissipation);
    }
    const auto res = energy_ledger(rs);
    CHECK(res.back() == doctest::Approx(std::exp(-1.0) - 1.0 + oracle::trapezoid(ts, ds)).epsilon(1e-12));
    CHECK(std::abs(res.back()) <= 1e-5);
}

TEST_CASE("find_T0") {
    std::vector<DiagRecord> rs;
    for (int i = 0; i <= 10; ++i) update_running(rs, rec(0.1 * i, 0.01, 0, 0));
    CHECK(find_t0(rs, 0.1).value() == 0.0); // total I_L = 0.01 < 0.2

    // I_L linear with slope 2: T0 = max(t_first, t_last - 2 delta / (C slope))
    std::vector<DiagRecord> lin;
    for (int i = 0; i <= 100; ++i) update_running(lin, rec(0.01 * i, 2.0, 0, 0));
    const double delta = 0.3, c = 1.5;
    const double expected = 1.0 - 2.0 * delta / (c * 2.0);
    const double t0 = find_t0(lin, delta, c).value();
    CHECK(t0 >= expected - 1e-12);
    CHECK(t0 <= expected + 0.01 + 1e-12);

    std::vector<DiagRecord> big;
    for (int i = 0; i <= 10; ++i) update_running(big, rec(i, 100.0, 0, 0));
    CHECK_FALSE(find_t0(big, 0.1).has_value());

    CHECK_THROWS_AS(find_t0(std::vector<DiagRecord>{}, 0.1), ParameterError);
    CHECK_THROWS_AS(find_t0(lin, 0.0), ParameterError);
}

TEST_CASE("CSV schema") {
    CHECK(diag_csv_header() ==
          "t,E_kin,E_mag,dissipation,lu_l2,grad_u_linf,grad_b_linf,u_hk,b_hk,M_t,I_L,I_inf,diss_int,div_u_res,div_b_res,"
          "energy_residual");
    DiagRecord r;
    r.t = 0.1;
    r.e_kin = 1.0 / 3.0;
    r.energy_residual = -2.5e-17;
    r.m_t = 1e300;
    const DiagRecord back = parse_diag_csv_row(diag_csv_row(r));
    CHECK(back.t == r.t);
    CHECK(back.e_kin == r.e_kin);
    CHECK(back.energy_residual == r.energy_residual);
    CHECK(back.m_t == r.m_t);
    CHECK_THROWS_AS(parse_diag_csv_row("1,2,3"), IoError);
}

TEST_CASE("default H^k order") {
    CHECK(default_hk_order(2) == 3.0);
    CHECK(default_hk_order(3) == 4.0);
}
