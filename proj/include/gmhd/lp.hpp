#pragma once

// Littlewood-Paley analysis on the periodic lattice: smooth dyadic bands,
// Bernstein ratios, the logarithmic gradient bound and Gagliardo-Nirenberg
// ratio checks. Every inequality is tested constant-free: ratios are
// reported and judged by their trend under scale doubling.

#include "gmhd/spectral.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gmhd::lp {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
/// Radial cutoff chi: 1 on [0, 1], 0 on [2, inf), nonincreasing.
double cutoff_profile(double r);
/// phi(r) = chi(r) - chi(2r): supported in [1/2, 2], positive inside, phi(1) = 1.
/// Dyadic sums telescope, so sum_j phi(2^-j r) = 1 for every r > 0.
double bump_profile(double r);

class DyadicPartition {
public:
    /// Validated: jmin <= 0 <= jmax and 2^jmax <= N/2 (ConfigError otherwise).
    static DyadicPartition build(const GridSpec& grid, int jmin, int jmax);
    /// jmin = 0 and the smallest jmax with 2^jmax >= max lattice |xi|, so every
    /// nonzero mode is covered. Not bound by the N/2 limit of build().
    static DyadicPartition covering(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int jmin() const { return jmin_; }
    int jmax() const { return jmax_; }

    /// phi_j(r) = phi(2^-j r); defined for any integer j.
    double band_weight(int j, double r) const;
    /// 1 - sum_{j=k+1}^{jmax} phi_j(r).
    double lowpass_weight(int k, double r) const;
    /// sum_{j=jmin}^{jmax} phi_j(r); equals 1 on [2^jmin, 2^jmax].
    double partition_sum(double r) const;
    double covered_lo() const;
    double covered_hi() const;

private:
    DyadicPartition(GridSpec grid, int jmin, int jmax) : grid_(grid), jmin_(jmin), jmax_(jmax) {}
    GridSpec grid_;
    int jmin_ = 0;
    int jmax_ = 0;
};

DyadicPartition build_partition(const GridSpec& grid, int jmin, int jmax);

/// Delta_j u.
SpectralField lp_block(const SpectralField& u, const DyadicPartition& partition, int j);
/// S_k u.
SpectralField lp_lowpass(const SpectralField& u, const DyadicPartition& partition, int k);

enum class BernsteinNorms { l2_l2, l2_linf };

/// ||Delta_j d^beta u||_q / (2^{|beta| j} 2^{j n (1/p - 1/q)} ||u||_p) with p = 2.
/// d^beta is the full derivative tensor of order deriv_order (pointwise Frobenius norm).
/// Throws DegenerateSample when ||u||_2 vanishes.
double bernstein_ratio(const SpectralField& u, const DyadicPartition& partition, int j,
                       BernsteinNorms norms, int deriv_order);

struct Lemma1Terms {
    double low = 0;  ///< ||grad S_{-1} u||_inf
    double mid = 0;  ///< sum_{j=0}^{N} ||grad Delta_j u||_inf
    double high = 0; ///< sum_{j>N} ||grad Delta_j u||_inf
    int n_used = 0;
    /// ||u||_2 + N ||L u||_2 + 2^{(1+n/2-k) N} ||u||_{H^k}
    double bound = 0;
    double grad_linf = 0;
    double ratio = 0; ///< grad_linf / bound, 0 when both vanish
    double l2 = 0, dissipation = 0, hk = 0;
};

/// Three-term dyadic split of ||grad u||_inf and the constant-free bound.
/// Requires k > 1 + n/2, alpha = 1 + n/2 and g unity or log_power with gamma <= 1/2.
Lemma1Terms lemma1_bound(const SpectralField& u, double k, const MultiplierSpec& m);

/// Cutoff N = ceil(log2(e + hk) / (k - 1 - n/2)).
int lemma1_cutoff(double hk, double k, int n);

/// Point s_j in (2^{j-1}, 2^{j+1}) with g(s_j) >= sup/2, from 64 log-spaced samples.
double sj_select(const std::function<double(double)>& g, int j);
double sj_select(GFamily family, double gamma, int j);

enum class GnKind {
    sup_interpolation, ///< ||d^k u||_inf <= C ||u||_2^a ||Lambda^{k+lambda} u||_2^{1-a}
    l2_interpolation,  ///< ||d^l u||_2 <= C ||grad u||_2^xi ||grad^k u||_2^{1-xi}, xi = (k-l)/(k-1)
    grad_sup,          ///< ||grad u||_inf <= C ||grad u||_2^xi ||grad^k u||_2^{1-xi}, xi = (k-1-n/2)/(k-1)
    hk_interpolation,  ///< ||grad^k u||_2 <= C ||Lambda^lambda u||_2^eta ||Lambda^{k+lambda} u||_2^{1-eta}
};

std::string to_string(GnKind kind);
GnKind parse_gn_kind(const std::string& name);

struct GnParams {
    int k = 3;
    double lambda = 1.75;
    int l = 2;
};

/// LHS over the product of RHS norms with the interpolation exponents, constant-free.
double gn_ratio(const SpectralField& u, GnKind kind, const GnParams& params);

// -- sample families and reports --------------------------------------------

struct SampleRow {
    std::string family_id;
    int band = 0;
    double scale = 0; ///< 2^j or bandwidth
    std::uint64_t index = 0;
    double ratio = 0;
};

struct InequalityReport {
    std::string family_id;
    std::size_t samples = 0;
    std::size_t discarded = 0;
    double ratio_max = 0;
    double ratio_mean = 0;
    std::map<int, double> band_ratio_max;
    std::map<int, double> band_ratio_mean;
    double slope = 0; ///< least-squares slope of log(band max) against log(scale)
    double slope_threshold = 0.1;
    bool bounded = true;
};

/// Aggregates rows of one family; slope is fitted on per-band maxima.
InequalityReport summarize(const std::string& family_id, const std::vector<SampleRow>& rows,
                           std::size_t discarded, double slope_threshold);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace gmhd::lp
