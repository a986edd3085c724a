#include "gmhd/spectral.hpp"

#include "gmhd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace gmhd {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void require_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()) || a.size() != b.size())
        throw ConfigError("spectral fields live on different grids");
}

} // namespace

// -- GridSpec ----------------------------------------------------------------

GridSpec GridSpec::make(int dim, int n) {
    GridSpec g{dim, n};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("dim must be 2 or 3, got " + std::to_string(dim));
    if (!is_power_of_two(n) || n < 8)
        throw ConfigError("points per axis must be a power of two >= 8, got " + std::to_string(n));
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
    return s;
}

std::array<int, 3> GridSpec::multi_index(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

double GridSpec::max_wavenumber() const { return std::sqrt(static_cast<double>(dim)) * (n / 2); }

// -- Lattice -----------------------------------------------------------------

namespace {

std::unique_ptr<Lattice> build_lattice(const GridSpec& grid) {
    auto lat = std::make_unique<Lattice>();
    lat->grid = grid;
    const std::size_t size = grid.size();
    const int keep_max = grid.n / 3;
    for (int a = 0; a < 3; ++a) {
        lat->k[a].assign(a < grid.dim ? size : 0, 0.0);
        lat->nyquist[a].assign(a < grid.dim ? size : 0, 0);
    }
    lat->k2.resize(size);
    lat->kmag.resize(size);
    lat->dealias_keep.resize(size);
    lat->partner.resize(size);
    for (std::size_t flat = 0; flat < size; ++flat) {
        const auto idx = grid.multi_index(flat);
        double k2 = 0.0;
        bool keep = true;
        std::size_t partner = 0;
        for (int a = 0; a < grid.dim; ++a) {
            const int w = grid.wavenumber(idx[a]);
            lat->k[a][flat] = w;
            lat->nyquist[a][flat] = idx[a] == grid.n / 2;
            k2 += static_cast<double>(w) * w;
            keep = keep && std::abs(w) <= keep_max;
            partner = partner * grid.n + static_cast<std::size_t>((grid.n - idx[a]) % grid.n);
        }
        lat->k2[flat] = k2;
        lat->kmag[flat] = std::sqrt(k2);
        lat->dealias_keep[flat] = keep;
        lat->partner[flat] = partner;
    }
    return lat;
}

} // namespace

const Lattice& lattice(const GridSpec& grid) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Lattice>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{grid.dim, grid.n}];
    if (!slot) {
        grid.validate();
        slot = build_lattice(grid);
    }
    return *slot;
}

// -- SpectralField / VectorField ---------------------------------------------

SpectralField::SpectralField(GridSpec grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(GridSpec grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size())
        throw ConfigError("coefficient count " + std::to_string(coeffs_.size()) +
                          " does not match grid size " + std::to_string(grid_.size()));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

VectorField VectorField::zeros(const GridSpec& grid) {
    VectorField v;
    v.components.assign(grid.dim, SpectralField(grid));
    v.divergence_free = true;
    return v;
}

VectorField& VectorField::operator+=(const VectorField& other) {
    for (std::size_t i = 0; i < components.size(); ++i) components[i] += other.components[i];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : components) c *= s;
    return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& other) {
    for (std::size_t i = 0; i < components.size(); ++i) components[i].axpy(s, other.components[i]);
    return *this;
}

// -- MultiplierSpec ----------------------------------------------------------

std::string to_string(GFamily family) {
    switch (family) {
    case GFamily::unity: return "unity";
    case GFamily::log_power: return "log_power";
    }
    return "unknown";
}

GFamily parse_g_family(std::string_view name) {
    if (name == "unity") return GFamily::unity;
    if (name == "log_power") return GFamily::log_power;
    throw UnsupportedError("unsupported g family '" + std::string(name) +
                           "' (supported: unity, log_power)");
}

void MultiplierSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be >= 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be >= 0");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be >= 0");
}

double MultiplierSpec::g(double s) const {
    if (g_family == GFamily::unity || gamma == 0.0) return 1.0;
    return std::pow(std::log(kE + s), gamma);
}

double MultiplierSpec::symbol_power(double r, double power) const {
    if (r == 0.0) {
        if (alpha * power != 0.0) return 0.0;
        return std::pow(g(0.0), -power);
    }
    return std::pow(std::pow(r, alpha) / g(r), power);
}

// -- multipliers -------------------------------------------------------------

SpectralField apply_multiplier(const SpectralField& u, const MultiplierSpec& m, double power) {
    SpectralField out = u;
    const Lattice& lat = lattice(u.grid());
    auto c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m.symbol_power(lat.kmag[i], power);
    return out;
}

SpectralField derivative(const SpectralField& u, int axis, int order) {
    const GridSpec& grid = u.grid();
    if (axis < 0 || axis >= grid.dim) throw ConfigError("derivative axis out of range");
    if (order < 0) throw ParameterError("derivative order must be >= 0");
    const Lattice& lat = lattice(grid);
    SpectralField out = u;
    auto c = out.coeffs();
    static constexpr Complex kIPowers[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Complex i_pow = kIPowers[order % 4];
    for (std::size_t f = 0; f < c.size(); ++f) {
        if (order % 2 == 1 && lat.nyquist[axis][f]) {
            c[f] = 0.0;
            continue;
        }
        c[f] *= i_pow * std::pow(lat.k[axis][f], order);
    }
    return out;
}

SpectralField lambda_power(const SpectralField& u, double s) {
    return apply_radial(u, [s](double r) { return r == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r, s); });
}

void dealias_inplace(SpectralField& u) {
    const Lattice& lat = lattice(u.grid());
    auto c = u.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!lat.dealias_keep[i]) c[i] = 0.0;
}

void dealias_inplace(VectorField& v) {
    for (auto& c : v.components) dealias_inplace(c);
}

void enforce_hermitian(SpectralField& u) {
    const Lattice& lat = lattice(u.grid());
    auto c = u.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::size_t p = lat.partner[i];
        if (p < i) continue;
        if (p == i) {
            c[i] = c[i].real();
            continue;
        }
        const Complex avg = 0.5 * (c[i] + std::conj(c[p]));
        c[i] = avg;
        c[p] = std::conj(avg);
    }
}

void enforce_hermitian(VectorField& v) {
    for (auto& c : v.components) enforce_hermitian(c);
}

VectorField leray_project(const VectorField& v) {
    const GridSpec& grid = v.grid();
    const Lattice& lat = lattice(grid);
    const int dim = v.dim();
    if (dim != grid.dim) throw ConfigError("vector field has wrong number of components");
    VectorField out = v;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const double k2 = lat.k2[f];
        if (k2 == 0.0) continue;
        Complex kdotv = 0.0;
        for (int a = 0; a < dim; ++a) kdotv += lat.k[a][f] * v.components[a][f];
        const Complex scale = kdotv / k2;
        for (int a = 0; a < dim; ++a) out.components[a][f] -= lat.k[a][f] * scale;
    }
    out.divergence_free = true;
    return out;
}

double divergence_residual(const VectorField& v) {
    const Lattice& lat = lattice(v.grid());
    double max_div = 0.0, max_coeff = 0.0;
    for (std::size_t f = 0; f < v.grid().size(); ++f) {
        Complex kdotv = 0.0;
        for (int a = 0; a < v.dim(); ++a) {
            kdotv += lat.k[a][f] * v.components[a][f];
            max_coeff = std::max(max_coeff, std::abs(v.components[a][f]));
        }
        max_div = std::max(max_div, std::abs(kdotv));
    }
    return max_div / std::max(1.0, max_coeff);
}

// -- norms -------------------------------------------------------------------

namespace {

template <class Weight>
double weighted_sum(const SpectralField& u, Weight&& w) {
    const Lattice& lat = lattice(u.grid());
    const auto c = u.coeffs();
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w(lat.kmag[i], lat.k2[i]) * std::norm(c[i]);
    return s;
}

double hk_sq(const SpectralField& u, double s) {
    return weighted_sum(u, [s](double, double k2) { return std::pow(1.0 + k2, s); });
}

double hom_sq(const SpectralField& u, double s) {
    if (s == 0.0) return weighted_sum(u, [](double, double) { return 1.0; });
    return weighted_sum(u, [s](double, double k2) { return k2 == 0.0 ? 0.0 : std::pow(k2, s); });
}

double diss_sq(const SpectralField& u, const MultiplierSpec& m) {
    return weighted_sum(u, [&m](double r, double) {
        const double sym = m.symbol(r);
        return sym * sym;
    });
}

} // namespace

double l2_norm(const SpectralField& u) { return std::sqrt(hom_sq(u, 0.0)); }

double linf_norm(const SpectralField& u) {
    const auto x = inverse(u);
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double hk_norm(const SpectralField& u, double s) { return std::sqrt(hk_sq(u, s)); }
double hom_norm(const SpectralField& u, double s) { return std::sqrt(hom_sq(u, s)); }
double dissipation_norm(const SpectralField& u, const MultiplierSpec& m) { return std::sqrt(diss_sq(u, m)); }

double l2_norm(const VectorField& v) { return hom_norm(v, 0.0); }

double linf_norm(const VectorField& v) {
    std::vector<double> mag2(v.grid().size(), 0.0);
    for (const auto& c : v.components) {
        const auto x = inverse(c);
        for (std::size_t i = 0; i < x.size(); ++i) mag2[i] += x[i] * x[i];
    }
    return std::sqrt(*std::max_element(mag2.begin(), mag2.end()));
}

double hk_norm(const VectorField& v, double s) {
    double t = 0.0;
    for (const auto& c : v.components) t += hk_sq(c, s);
    return std::sqrt(t);
}

double hom_norm(const VectorField& v, double s) {
    double t = 0.0;
    for (const auto& c : v.components) t += hom_sq(c, s);
    return std::sqrt(t);
}

double dissipation_norm(const VectorField& v, const MultiplierSpec& m) {
    double t = 0.0;
    for (const auto& c : v.components) t += diss_sq(c, m);
    return std::sqrt(t);
}

NormSet norms(const SpectralField& u, double s, const MultiplierSpec& m) {
    return {l2_norm(u), linf_norm(u), hk_norm(u, s), hom_norm(u, s), dissipation_norm(u, m)};
}

double grad_linf(const SpectralField& u) {
    std::vector<double> mag2(u.grid().size(), 0.0);
    for (int a = 0; a < u.grid().dim; ++a) {
        const auto d = inverse(derivative(u, a));
        for (std::size_t i = 0; i < d.size(); ++i) mag2[i] += d[i] * d[i];
    }
    return std::sqrt(*std::max_element(mag2.begin(), mag2.end()));
}

double grad_linf(const VectorField& v) {
    std::vector<double> mag2(v.grid().size(), 0.0);
    for (const auto& comp : v.components)
        for (int a = 0; a < v.grid().dim; ++a) {
            const auto d = inverse(derivative(comp, a));
            for (std::size_t i = 0; i < d.size(); ++i) mag2[i] += d[i] * d[i];
        }
    return std::sqrt(*std::max_element(mag2.begin(), mag2.end()));
}

namespace {

// Enumerates multi-indices alpha with |alpha| = order in `dim` variables,
// calling f(alpha, multinomial(order; alpha)).
template <class F>
void for_each_multi_index(int dim, int order, F&& f) {
    std::array<int, 3> alpha{0, 0, 0};
    auto factorial = [](int k) {
        double r = 1.0;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    };
    auto visit = [&](auto&& self, int axis, int remaining) -> void {
        if (axis == dim - 1) {
            alpha[axis] = remaining;
            double denom = 1.0;
            for (int a = 0; a < dim; ++a) denom *= factorial(alpha[a]);
            f(alpha, factorial(order) / denom);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            alpha[axis] = k;
            self(self, axis + 1, remaining - k);
        }
    };
    visit(visit, 0, order);
}

} // namespace

double deriv_tensor_linf(const SpectralField& u, int order) {
    if (order < 0) throw ParameterError("derivative order must be >= 0");
    if (order == 0) return linf_norm(u);
    const GridSpec& grid = u.grid();
    std::vector<double> mag2(grid.size(), 0.0);
    for_each_multi_index(grid.dim, order, [&](const std::array<int, 3>& alpha, double weight) {
        SpectralField d = u;
        for (int a = 0; a < grid.dim; ++a)
            if (alpha[a] > 0) d = derivative(d, a, alpha[a]);
        const auto x = inverse(d);
        for (std::size_t i = 0; i < x.size(); ++i) mag2[i] += weight * x[i] * x[i];
    });
    return std::sqrt(*std::max_element(mag2.begin(), mag2.end()));
}

double norm_equivalence_constant(const GridSpec& grid, double lambda, double m_order,
                                 const MultiplierSpec& mult) {
    const Lattice& lat = lattice(grid);
    double best = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const double r = lat.kmag[f];
        const double num = std::pow(1.0 + lat.k2[f], 0.5 * (m_order + lambda));
        const double dissipative = r == 0.0 ? 0.0 : std::pow(r, m_order + mult.alpha) / mult.g(r);
        best = std::max(best, num / (1.0 + dissipative));
    }
    return best;
}

// -- random fields -----------------------------------------------------------

Rng make_rng(std::uint64_t seed, std::string_view family, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char ch : family) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

SpectralField random_band_field(const GridSpec& grid, double lo, double hi, Rng& rng, bool open) {
    const Lattice& lat = lattice(grid);
    SpectralField out(grid);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto c = out.coeffs();
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const std::size_t p = lat.partner[f];
        if (p <= f) continue; // self-conjugate modes (mean, Nyquist corners) stay zero
        bool on_nyquist = false;
        for (int a = 0; a < grid.dim; ++a) on_nyquist = on_nyquist || lat.nyquist[a][f];
        const double r = lat.kmag[f];
        const bool inside = open ? (r > lo && r < hi) : (r >= lo && r <= hi);
        // Draw regardless of membership so the stream does not depend on the band.
        const double re = normal(rng), im = normal(rng);
        if (!inside || on_nyquist) continue;
        const Complex z(re / std::sqrt(2.0), im / std::sqrt(2.0));
        c[f] = z;
        c[p] = std::conj(z);
    }
    return out;
}

VectorField random_solenoidal_field(const GridSpec& grid, double lo, double hi, Rng& rng) {
    VectorField v;
    for (int a = 0; a < grid.dim; ++a) v.components.push_back(random_band_field(grid, lo, hi, rng));
    return leray_project(v);
}

} // namespace gmhd
