#pragma once

// Monitored quantities of the regularity argument: energy ledger, the running
// supremum M(t), criterion integrals, the exponent algebra of the H^1/H^k
// estimates, the T0 finder and the dissipation-regime classifier.

#include "gmhd/spectral.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmhd {

struct DiagRecord {
    double t = 0;
    double e_kin = 0;       ///< ||u||^2 / 2
    double e_mag = 0;       ///< ||b||^2 / 2
    double dissipation = 0; ///< nu ||L u||^2
    double lu_l2 = 0;       ///< ||L u||_2
    double grad_u_linf = 0;
    double grad_b_linf = 0;
    double u_hk = 0;
    double b_hk = 0;
    double m_t = 0;      ///< sup of e + ||u||_{H^k} + ||b||_{H^k} over recorded times
    double i_l = 0;      ///< \int ||L u||_2 dt
    double i_inf = 0;    ///< \int ||grad u||_inf dt
    double diss_int = 0; ///< \int nu ||L u||^2 dt
    double div_u_res = 0;
    double div_b_res = 0;
    double energy_residual = 0;

    double energy() const { return e_kin + e_mag; }
};

/// CSV header and rows; column order is part of the file format.
std::span<const std::string_view> diag_csv_columns();
std::string diag_csv_header();
std::string diag_csv_row(const DiagRecord& r);
DiagRecord parse_diag_csv_row(std::string_view line);

/// Instantaneous quantities of one state (running fields left at zero).
DiagRecord sample_record(const VectorField& u, const VectorField& b, double t,
                         const MultiplierSpec& m, double hk_order);

/// Appends `sample` after extending M(t), I_L, I_inf, the dissipation integral
/// and the energy residual by the trapezoid rule. Throws ParameterError (and
/// leaves `records` untouched) when sample.t precedes the last record.
void update_running(std::vector<DiagRecord>& records, DiagRecord sample);

/// [E(t_i) - E(t_0) + \int nu ||L u||^2] / E(t_0), trapezoid rule. 0 when E(t_0) = 0.
std::vector<double> energy_ledger(std::span<const DiagRecord> records);

struct ExponentSet {
    double k = 0;
    int n = 0;
    double lambda = 0;
    double a = 0;         ///< (lambda - n/2) / (k + lambda)
    double two_delta = 0; ///< min of the two bracket terms
    double delta = 0;
    double A = 0;
    double B = 0;
    double C = 0;         ///< 2 lambda / (k + lambda)
    double xi_grad = 0;   ///< (k - 1 - n/2) / (k - 1)
    double eta_hk = 0;    ///< lambda / k

    double xi(double l) const { return (k - l) / (k - 1.0); }
    double eta(double m) const { return (k - m) / (k - 1.0); }
    double young_exponent() const { return 2.0 / (1.0 + a); }
};

struct LambdaWindow {
    double lo = 0; ///< n/2 * k/(k-1)
    double hi = 0; ///< 1 + n/2
};

/// Throws ParameterError when k <= 1 + n/2.
LambdaWindow lambda_window(double k, int n);
/// Throws ParameterError naming the violated bound when lambda is outside the open window.
ExponentSet exponents(double k, int n, double lambda);

struct RegimeReport {
    double alpha = 0;
    double beta = 0;
    GFamily g_family = GFamily::log_power;
    double gamma = 0;
    int n = 0;
    bool main_condition = false;
    bool wu_condition = false;
    bool tao_condition = false;
};

RegimeReport regime_classify(double alpha, double beta, GFamily family, double gamma, int n);
/// Throws UnsupportedError for families other than unity/log_power.
RegimeReport regime_classify(double alpha, double beta, std::string_view family, double gamma,
                             int n);

/// Earliest record time T0 (before the last record) with
/// c_user * (I_L(t) - I_L(T0)) < 2 delta for every later record.
std::optional<double> find_t0(std::span<const DiagRecord> records, double delta,
                              double c_user = 1.0);

/// Smallest H^k order monitored by default: 3 in 2D, 4 in 3D.
double default_hk_order(int dim);

} // namespace gmhd
