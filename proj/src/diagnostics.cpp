#include "gmhd/diagnostics.hpp"

#include "gmhd/errors.hpp"
#include "gmhd/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gmhd {

namespace {

constexpr std::array<std::string_view, 16> kColumns = {
    "t",        "E_kin", "E_mag", "dissipation", "lu_l2",     "grad_u_linf", "grad_b_linf", "u_hk",
    "b_hk",     "M_t",   "I_L",   "I_inf",       "diss_int",  "div_u_res",   "div_b_res",   "energy_residual"};

std::array<double, 16> fields_of(const DiagRecord& r) {
    return {r.t,   r.e_kin, r.e_mag, r.dissipation, r.lu_l2,     r.grad_u_linf, r.grad_b_linf, r.u_hk,
            r.b_hk, r.m_t,  r.i_l,   r.i_inf,       r.diss_int,  r.div_u_res,   r.div_b_res,   r.energy_residual};
}

// Absolute slack on threshold comparisons so decimal literals at a threshold classify at equality.
constexpr double kThresholdSlack = 1e-12;

} // namespace

std::span<const std::string_view> diag_csv_columns() { return kColumns; }

std::string diag_csv_header() {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    return out;
}

std::string diag_csv_row(const DiagRecord& r) {
    std::string out;
    const auto f = fields_of(r);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += ',';
        out += format_double(f[i]);
    }
    return out;
}

DiagRecord parse_diag_csv_row(std::string_view line) {
    std::array<double, 16> v{};
    std::size_t col = 0, start = 0;
    while (col < v.size()) {
        const std::size_t end = std::min(line.find(',', start), line.size());
        v[col++] = parse_double(line.substr(start, end - start));
        if (end >= line.size()) break;
        start = end + 1;
    }
    if (col != v.size()) throw IoError("diag row has " + std::to_string(col) + " columns, expected 16");
    DiagRecord r;
    r.t = v[0];
    r.e_kin = v[1];
    r.e_mag = v[2];
    r.dissipation = v[3];
    r.lu_l2 = v[4];
    r.grad_u_linf = v[5];
    r.grad_b_linf = v[6];
    r.u_hk = v[7];
    r.b_hk = v[8];
    r.m_t = v[9];
    r.i_l = v[10];
    r.i_inf = v[11];
    r.diss_int = v[12];
    r.div_u_res = v[13];
    r.div_b_res = v[14];
    r.energy_residual = v[15];
    return r;
}

DiagRecord sample_record(const VectorField& u, const VectorField& b, double t,
                         const MultiplierSpec& m, double hk_order) {
    DiagRecord r;
    r.t = t;
    const double ul2 = l2_norm(u), bl2 = l2_norm(b);
    r.e_kin = 0.5 * ul2 * ul2;
    r.e_mag = 0.5 * bl2 * bl2;
    r.lu_l2 = dissipation_norm(u, m);
    r.dissipation = m.nu * r.lu_l2 * r.lu_l2;
    r.grad_u_linf = grad_linf(u);
    r.grad_b_linf = grad_linf(b);
    r.u_hk = hk_norm(u, hk_order);
    r.b_hk = hk_norm(b, hk_order);
    r.div_u_res = divergence_residual(u);
    r.div_b_res = divergence_residual(b);
    return r;
}

void update_running(std::vector<DiagRecord>& records, DiagRecord sample) {
    const double level = kE + sample.u_hk + sample.b_hk;
    if (records.empty()) {
        sample.m_t = level;
        sample.i_l = sample.i_inf = sample.diss_int = 0.0;
        sample.energy_residual = 0.0;
        records.push_back(sample);
        return;
    }
    const DiagRecord& prev = records.back();
    if (sample.t < prev.t)
        throw ParameterError("time regression: record at t = " + format_double(sample.t) +
                             " follows t = " + format_double(prev.t));
    const double h = sample.t - prev.t;
    sample.m_t = std::max(prev.m_t, level);
    sample.i_l = prev.i_l + 0.5 * h * (prev.lu_l2 + sample.lu_l2);
    sample.i_inf = prev.i_inf + 0.5 * h * (prev.grad_u_linf + sample.grad_u_linf);
    sample.diss_int = prev.diss_int + 0.5 * h * (prev.dissipation + sample.dissipation);
    const double e0 = records.front().energy();
    sample.energy_residual = e0 > 0.0 ? (sample.energy() - e0 + sample.diss_int) / e0 : 0.0;
    records.push_back(sample);
}

std::vector<double> energy_ledger(std::span<const DiagRecord> records) {
    if (records.size() < 2) throw ParameterError("energy ledger needs at least 2 records");
    std::vector<double> residual(records.size(), 0.0);
    const double e0 = records.front().energy();
    double integral = 0.0;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double h = records[i].t - records[i - 1].t;
        if (h < 0.0) throw ParameterError("energy ledger records are not ordered in time");
        integral += 0.5 * h * (records[i - 1].dissipation + records[i].dissipation);
        residual[i] = e0 > 0.0 ? (records[i].energy() - e0 + integral) / e0 : 0.0;
    }
    return residual;
}

LambdaWindow lambda_window(double k, int n) {
    const double half_n = 0.5 * n;
    if (!(k > 1.0 + half_n))
        throw ParameterError("k ≤ 1+n/2 = " + format_double(1.0 + half_n));
    return {half_n * k / (k - 1.0), 1.0 + half_n};
}

ExponentSet exponents(double k, int n, double lambda) {
    if (n < 1) throw ParameterError("n must be >= 1");
    const LambdaWindow w = lambda_window(k, n);
    if (!(lambda > w.lo)) throw ParameterError("λ ≤ n/2·k/(k−1) = " + format_double(w.lo));
    if (!(lambda < w.hi)) throw ParameterError("λ ≥ 1+n/2 = " + format_double(w.hi));

    const double half_n = 0.5 * n;
    ExponentSet e;
    e.k = k;
    e.n = n;
    e.lambda = lambda;
    e.a = (lambda - half_n) / (k + lambda);
    const double first = ((k + lambda) * (k - 1.0) - k * (k - 1.0 + half_n)) / (k * (k - 1.0 - half_n));
    e.two_delta = std::min(first, e.a);
    e.delta = 0.5 * e.two_delta;
    e.A = 2.0 * k * (k - 1.0 - half_n) / ((k + lambda) * (k - 1.0));
    e.B = 2.0 * k * (k - 1.0 + half_n) / ((k + lambda) * (k - 1.0));
    e.C = 2.0 * lambda / (k + lambda);
    e.xi_grad = (k - 1.0 - half_n) / (k - 1.0);
    e.eta_hk = lambda / k;
    return e;
}

RegimeReport regime_classify(double alpha, double beta, GFamily family, double gamma, int n) {
    if (n < 1) throw ParameterError("n must be >= 1");
    if (!(gamma >= 0.0)) throw ParameterError("gamma must be >= 0");
    const double half_n = 0.5 * n;
    // Effective log exponent: unity is log_power with gamma = 0.
    const double g_exp = family == GFamily::unity ? 0.0 : gamma;

    RegimeReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.g_family = family;
    r.gamma = gamma;
    r.n = n;
    // g^2 <= C log(e+s) <=> 2 gamma <= 1.
    r.main_condition = alpha >= 1.0 + half_n - kThresholdSlack && g_exp <= 0.5;
    // \int ds / (s g^4) = inf <=> 4 gamma <= 1; with g2 = 1 the Wu integrand behaves the same.
    const bool integral_diverges = g_exp <= 0.25;
    const bool alpha_low = alpha >= 0.5 + 0.25 * n - kThresholdSlack;
    r.wu_condition = alpha_low && beta > 0.0 && alpha + beta >= 1.0 + half_n - kThresholdSlack &&
                     integral_diverges;
    r.tao_condition = alpha_low && integral_diverges;
    return r;
}

RegimeReport regime_classify(double alpha, double beta, std::string_view family, double gamma,
                             int n) {
    return regime_classify(alpha, beta, parse_g_family(family), gamma, n);
}

std::optional<double> find_t0(std::span<const DiagRecord> records, double delta, double c_user) {
    if (records.empty()) throw ParameterError("find_T0 needs at least one record");
    if (!(delta > 0.0)) throw ParameterError("delta must be > 0");
    if (!(c_user > 0.0)) throw ParameterError("C_user must be > 0");
    std::vector<double> later_max(records.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = records.size() - 1; i-- > 0;)
        later_max[i] = std::max(later_max[i + 1], records[i + 1].i_l);
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        if (c_user * (later_max[i] - records[i].i_l) < 2.0 * delta) return records[i].t;
    }
    return std::nullopt;
}

double default_hk_order(int dim) { return dim == 2 ? 3.0 : 4.0; }

} // namespace gmhd
