#include "gmhd/lp.hpp"

#include "gmhd/diagnostics.hpp"
#include "gmhd/errors.hpp"
#include "gmhd/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gmhd::lp {

namespace {

// 1 - smooth_step(t), without cancellation near t = 0.
double smooth_step_complement(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return b / (a + b);
}

} // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double cutoff_profile(double r) { return smooth_step_complement(r - 1.0); }

// chi(r) - chi(2r), evaluated piecewise so tails keep full relative precision.
double bump_profile(double r) {
    if (r <= 0.5 || r >= 2.0) return 0.0;
    if (r <= 1.0) return smooth_step(2.0 * r - 1.0);
    return smooth_step_complement(r - 1.0);
}

// -- DyadicPartition ---------------------------------------------------------

DyadicPartition DyadicPartition::build(const GridSpec& grid, int jmin, int jmax) {
    grid.validate();
    if (jmin > 0 || jmax < 0)
        throw ConfigError("partition needs jmin <= 0 <= jmax, got [" + std::to_string(jmin) + ", " +
                          std::to_string(jmax) + "]");
    if (jmax > 30 || (1 << jmax) > grid.n / 2)
        throw ConfigError("jmax = " + std::to_string(jmax) + " too large for N = " +
                          std::to_string(grid.n) + " (need 2^jmax <= N/2)");
    return DyadicPartition(grid, jmin, jmax);
}

DyadicPartition DyadicPartition::covering(const GridSpec& grid) {
    grid.validate();
    int jmax = 0;
    while (std::ldexp(1.0, jmax) < grid.max_wavenumber()) ++jmax;
    return DyadicPartition(grid, 0, jmax);
}

double DyadicPartition::band_weight(int j, double r) const { return bump_profile(std::ldexp(r, -j)); }

double DyadicPartition::lowpass_weight(int k, double r) const {
    double s = 0.0;
    for (int j = std::max(k + 1, jmin_); j <= jmax_; ++j) s += band_weight(j, r);
    return 1.0 - s;
}

double DyadicPartition::partition_sum(double r) const {
    double s = 0.0;
    for (int j = jmin_; j <= jmax_; ++j) s += band_weight(j, r);
    return s;
}

double DyadicPartition::covered_lo() const { return std::ldexp(1.0, jmin_); }
double DyadicPartition::covered_hi() const { return std::ldexp(1.0, jmax_); }

DyadicPartition build_partition(const GridSpec& grid, int jmin, int jmax) {
    return DyadicPartition::build(grid, jmin, jmax);
}

namespace {

void require_grid(const SpectralField& u, const DyadicPartition& p) {
    if (!(u.grid() == p.grid())) throw ConfigError("field and partition live on different grids");
}

} // namespace

SpectralField lp_block(const SpectralField& u, const DyadicPartition& partition, int j) {
    require_grid(u, partition);
    return apply_radial(u, [&](double r) { return partition.band_weight(j, r); });
}

SpectralField lp_lowpass(const SpectralField& u, const DyadicPartition& partition, int k) {
    require_grid(u, partition);
    return apply_radial(u, [&](double r) { return partition.lowpass_weight(k, r); });
}

// -- Bernstein ---------------------------------------------------------------

double bernstein_ratio(const SpectralField& u, const DyadicPartition& partition, int j,
                       BernsteinNorms norms, int deriv_order) {
    if (deriv_order < 0) throw ParameterError("derivative order must be >= 0");
    const double lp_norm = l2_norm(u);
    if (!(lp_norm > 0.0)) throw DegenerateSample("empty shell: ||u||_2 = 0");
    const SpectralField block = lp_block(u, partition, j);
    const int n = u.grid().dim;
    double numerator = 0.0;
    double scale = std::ldexp(1.0, deriv_order * j);
    if (norms == BernsteinNorms::l2_l2) {
        numerator = hom_norm(block, deriv_order);
    } else {
        numerator = deriv_tensor_linf(block, deriv_order);
        scale *= std::pow(2.0, 0.5 * j * n);
    }
    return numerator / (scale * lp_norm);
}

// -- Lemma 1 -----------------------------------------------------------------

int lemma1_cutoff(double hk, double k, int n) {
    const double gap = k - 1.0 - 0.5 * n;
    if (!(gap > 0.0)) throw ParameterError("k ≤ 1+n/2 = " + format_double(1.0 + 0.5 * n));
    return static_cast<int>(std::ceil(std::log2(kE + hk) / gap));
}

Lemma1Terms lemma1_bound(const SpectralField& u, double k, const MultiplierSpec& m) {
    const int n = u.grid().dim;
    const double critical = 1.0 + 0.5 * n;
    if (!(k > critical)) throw ParameterError("k ≤ 1+n/2 = " + format_double(critical));
    if (std::abs(m.alpha - critical) > 1e-12)
        throw ParameterError("lemma1_bound needs alpha = 1+n/2 = " + format_double(critical));
    if (m.g_family == GFamily::log_power && m.gamma > 0.5)
        throw ParameterError("lemma1_bound needs gamma ≤ 1/2, got " + format_double(m.gamma));

    Lemma1Terms t;
    t.l2 = l2_norm(u);
    t.dissipation = dissipation_norm(u, m);
    t.hk = hk_norm(u, k);
    t.n_used = lemma1_cutoff(t.hk, k, n);
    t.bound = t.l2 + t.n_used * t.dissipation + std::pow(2.0, (critical - k) * t.n_used) * t.hk;
    t.grad_linf = grad_linf(u);

    const DyadicPartition cover = DyadicPartition::covering(u.grid());
    t.low = grad_linf(lp_lowpass(u, cover, -1));
    for (int j = cover.jmin(); j <= cover.jmax(); ++j) {
        const double term = grad_linf(lp_block(u, cover, j));
        (j <= t.n_used ? t.mid : t.high) += term;
    }
    t.ratio = t.bound > 0.0 ? t.grad_linf / t.bound : 0.0;
    return t;
}

// -- s_j selection -----------------------------------------------------------

double sj_select(const std::function<double(double)>& g, int j) {
    constexpr int kSamples = 64;
    const double lo = std::ldexp(1.0, j - 1);
    double best_s = lo, best_g = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
        const double s = lo * std::pow(4.0, (i + 0.5) / kSamples);
        const double v = g(s);
        if (v > best_g) {
            best_g = v;
            best_s = s;
        }
    }
    return best_s;
}

double sj_select(GFamily family, double gamma, int j) {
    if (family == GFamily::unity) return std::ldexp(1.0, j);
    MultiplierSpec m;
    m.g_family = family;
    m.gamma = gamma;
    return sj_select([&m](double s) { return m.g(s); }, j);
}

// -- Gagliardo-Nirenberg -----------------------------------------------------

std::string to_string(GnKind kind) {
    switch (kind) {
    case GnKind::sup_interpolation: return "sup_interpolation";
    case GnKind::l2_interpolation: return "l2_interpolation";
    case GnKind::grad_sup: return "grad_sup";
    case GnKind::hk_interpolation: return "hk_interpolation";
    }
    return "unknown";
}

GnKind parse_gn_kind(const std::string& name) {
    for (GnKind k : {GnKind::sup_interpolation, GnKind::l2_interpolation, GnKind::grad_sup,
                     GnKind::hk_interpolation})
        if (to_string(k) == name) return k;
    throw UnsupportedError("unknown Gagliardo-Nirenberg kind '" + name + "'");
}

namespace {

double checked_ratio(double lhs, double rhs) {
    if (!(rhs > 0.0)) throw DegenerateSample("Gagliardo-Nirenberg denominator vanished");
    return lhs / rhs;
}

} // namespace

double gn_ratio(const SpectralField& u, GnKind kind, const GnParams& p) {
    const int n = u.grid().dim;
    const double k = p.k;
    switch (kind) {
    case GnKind::sup_interpolation: {
        const ExponentSet e = exponents(k, n, p.lambda);
        const double rhs = std::pow(l2_norm(u), e.a) * std::pow(hom_norm(u, k + p.lambda), 1.0 - e.a);
        return checked_ratio(deriv_tensor_linf(u, p.k), rhs);
    }
    case GnKind::hk_interpolation: {
        const ExponentSet e = exponents(k, n, p.lambda);
        const double rhs = std::pow(hom_norm(u, p.lambda), e.eta_hk) *
                           std::pow(hom_norm(u, k + p.lambda), 1.0 - e.eta_hk);
        return checked_ratio(hom_norm(u, k), rhs);
    }
    case GnKind::l2_interpolation: {
        lambda_window(k, n);
        if (p.l < 1 || p.l > p.k) throw ParameterError("l must satisfy 1 ≤ l ≤ k");
        const double xi = (k - p.l) / (k - 1.0);
        const double rhs = std::pow(hom_norm(u, 1.0), xi) * std::pow(hom_norm(u, k), 1.0 - xi);
        return checked_ratio(hom_norm(u, p.l), rhs);
    }
    case GnKind::grad_sup: {
        lambda_window(k, n);
        const double xi = (k - 1.0 - 0.5 * n) / (k - 1.0);
        const double rhs = std::pow(hom_norm(u, 1.0), xi) * std::pow(hom_norm(u, k), 1.0 - xi);
        return checked_ratio(grad_linf(u), rhs);
    }
    }
    throw UnsupportedError("unknown Gagliardo-Nirenberg kind");
}

// -- reports -----------------------------------------------------------------

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return 0.0;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

InequalityReport summarize(const std::string& family_id, const std::vector<SampleRow>& rows,
                           std::size_t discarded, double slope_threshold) {
    InequalityReport rep;
    rep.family_id = family_id;
    rep.discarded = discarded;
    rep.slope_threshold = slope_threshold;
    std::map<int, double> scale_of;
    std::map<int, std::size_t> count;
    double total = 0.0;
    for (const auto& r : rows) {
        if (r.family_id != family_id) continue;
        ++rep.samples;
        total += r.ratio;
        rep.ratio_max = std::max(rep.ratio_max, r.ratio);
        auto [it, fresh] = rep.band_ratio_max.try_emplace(r.band, r.ratio);
        if (!fresh) it->second = std::max(it->second, r.ratio);
        rep.band_ratio_mean[r.band] += r.ratio;
        ++count[r.band];
        scale_of[r.band] = r.scale;
    }
    rep.ratio_mean = rep.samples ? total / rep.samples : 0.0;
    for (auto& [band, sum] : rep.band_ratio_mean) sum /= count[band];

    std::vector<double> x, y;
    for (const auto& [band, mx] : rep.band_ratio_max) {
        if (!(mx > 0.0)) continue;
        x.push_back(std::log(scale_of[band]));
        y.push_back(std::log(mx));
    }
    rep.slope = fit_slope(x, y);
    rep.bounded = rep.slope <= slope_threshold && std::isfinite(rep.ratio_max);
    return rep;
}

} // namespace gmhd::lp
