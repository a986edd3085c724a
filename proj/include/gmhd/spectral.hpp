#pragma once

// Periodic grids on [0, 2*pi)^n, Fourier transforms, radial multipliers,
// Leray projection and the norms used throughout the library.
//
// Fourier convention (fixed repo-wide): coefficients are the unitary
// torus transform
//
//     c(xi) = (2 pi)^{-n/2} \int_{T^n} e^{-i x.xi} f(x) dx
//           ~ (2 pi)^{n/2} / N^n * sum_x f(x) e^{-i x.xi},
//
//     f(x)  = (2 pi)^{-n/2} sum_xi c(xi) e^{i x.xi},
//
// so that sum |c|^2 equals the physical integral \int |f|^2 dx exactly.
// With this choice ||sin x1||^2 = (2 pi)^n / 2.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmhd {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kE = 2.71828182845904523536;

struct GridSpec {
    int dim = 2;
    int n = 64; ///< points per axis, a power of two >= 8

    /// Validated constructor; throws ConfigError.
    static GridSpec make(int dim, int n);
    void validate() const;

    std::size_t size() const;
    double spacing() const { return 2.0 * kPi / n; }
    /// FFT ordering: index i maps to i for i <= N/2, to i - N otherwise.
    int wavenumber(int index) const { return index <= n / 2 ? index : index - n; }
    std::array<int, 3> multi_index(std::size_t flat) const;
    /// Largest |xi| present on the lattice.
    double max_wavenumber() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Wavevector tables shared by every field on the same grid.
struct Lattice {
    GridSpec grid;
    std::array<std::vector<double>, 3> k; ///< k[axis][flat]
    std::vector<double> k2;               ///< |xi|^2
    std::vector<double> kmag;             ///< |xi|
    std::vector<std::uint8_t> dealias_keep;
    std::array<std::vector<std::uint8_t>, 3> nyquist;
    std::vector<std::size_t> partner; ///< flat index of -xi
};

/// Cached per grid; safe to call concurrently.
const Lattice& lattice(const GridSpec& grid);

class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(GridSpec grid);
    SpectralField(GridSpec grid, std::vector<Complex> coeffs);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    std::span<Complex> coeffs() { return coeffs_; }
    Complex operator[](std::size_t i) const { return coeffs_[i]; }
    Complex& operator[](std::size_t i) { return coeffs_[i]; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);
    /// this += s * other
    SpectralField& axpy(double s, const SpectralField& other);

private:
    GridSpec grid_{};
    std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

struct VectorField {
    std::vector<SpectralField> components;
    bool divergence_free = false;

    static VectorField zeros(const GridSpec& grid);
    const GridSpec& grid() const { return components.front().grid(); }
    int dim() const { return static_cast<int>(components.size()); }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator*=(double s);
    VectorField& axpy(double s, const VectorField& other);
};

enum class GFamily { unity, log_power };

std::string to_string(GFamily family);
/// Throws UnsupportedError for names other than "unity" and "log_power".
GFamily parse_g_family(std::string_view name);

/// Radial symbol m(xi) = |xi|^alpha / g(|xi|).
struct MultiplierSpec {
    double alpha = 2.0;
    GFamily g_family = GFamily::log_power;
    double gamma = 0.5; ///< g(s) = log(e + s)^gamma for log_power
    double nu = 1.0;

    void validate() const;
    double g(double s) const;
    double symbol(double r) const { return symbol_power(r, 1.0); }
    /// m(r)^power; 0 at r = 0 whenever alpha * power != 0.
    double symbol_power(double r, double power) const;
};

// -- transforms --------------------------------------------------------------

SpectralField forward(const GridSpec& grid, std::span<const double> samples);
SpectralField forward(const GridSpec& grid, std::span<const Complex> samples);
std::vector<double> inverse(const SpectralField& field);
std::vector<Complex> inverse_complex(const SpectralField& field);

/// Physical sample positions along one axis: x_i = 2 pi i / N.
inline double grid_coordinate(const GridSpec& grid, int i) { return grid.spacing() * i; }

/// Samples a function of the physical coordinates on the grid (row-major, axis 0 slowest).
template <class F>
std::vector<double> sample(const GridSpec& grid, F&& f) {
    std::vector<double> out(grid.size());
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        const auto idx = grid.multi_index(flat);
        std::array<double, 3> x{};
        for (int a = 0; a < grid.dim; ++a) x[a] = grid_coordinate(grid, idx[a]);
        out[flat] = f(x);
    }
    return out;
}

// -- multipliers -------------------------------------------------------------

SpectralField apply_multiplier(const SpectralField& u, const MultiplierSpec& m, double power);

/// Multiplies every coefficient by symbol(|xi|).
template <class F>
SpectralField apply_radial(const SpectralField& u, F&& symbol) {
    SpectralField out = u;
    const Lattice& lat = lattice(u.grid());
    auto c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= symbol(lat.kmag[i]);
    return out;
}

/// d^order / dx_axis^order. Odd orders zero the Nyquist plane of that axis.
SpectralField derivative(const SpectralField& u, int axis, int order = 1);
/// Homogeneous fractional derivative Lambda^s (symbol |xi|^s, zero mean mode for s > 0).
SpectralField lambda_power(const SpectralField& u, double s);

/// Two-thirds rule: zero every mode with some |xi_i| > N/3.
void dealias_inplace(SpectralField& u);
void dealias_inplace(VectorField& v);
/// c(xi) <- (c(xi) + conj(c(-xi))) / 2.
void enforce_hermitian(SpectralField& u);
void enforce_hermitian(VectorField& v);

/// (I - xi xi^T / |xi|^2) per mode; mean mode untouched.
VectorField leray_project(const VectorField& v);
/// max |xi . v(xi)| / max(1, max |v(xi)|).
double divergence_residual(const VectorField& v);

// -- norms -------------------------------------------------------------------

double l2_norm(const SpectralField& u);
double linf_norm(const SpectralField& u);
/// Inhomogeneous Bessel-potential norm (sum (1+|xi|^2)^s |c|^2)^{1/2}.
double hk_norm(const SpectralField& u, double s);
/// Homogeneous norm (sum |xi|^{2s} |c|^2)^{1/2}.
double hom_norm(const SpectralField& u, double s);
/// ||L u||_2 with L the multiplier of `m`.
double dissipation_norm(const SpectralField& u, const MultiplierSpec& m);

double l2_norm(const VectorField& v);
/// Pointwise Euclidean magnitude, maximized over the grid.
double linf_norm(const VectorField& v);
double hk_norm(const VectorField& v, double s);
double hom_norm(const VectorField& v, double s);
double dissipation_norm(const VectorField& v, const MultiplierSpec& m);

struct NormSet {
    double l2 = 0, linf = 0, hk = 0, hom = 0, dissipation = 0;
};
NormSet norms(const SpectralField& u, double s, const MultiplierSpec& m);

/// max_x |grad u(x)| on the collocation grid.
double grad_linf(const SpectralField& u);
/// max_x of the Frobenius norm of the gradient matrix.
double grad_linf(const VectorField& v);
/// max_x of the Frobenius norm of the order-th derivative tensor (symbol |xi|^order).
double deriv_tensor_linf(const SpectralField& u, int order);

/// Lattice certificate for ||u||_{H^{m+lambda}} <= C (||u||_2 + ||L Lambda^m u||_2):
/// max over lattice of (1+|xi|^2)^{(m+lambda)/2} / (1 + |xi|^{m+alpha} / g(|xi|)).
double norm_equivalence_constant(const GridSpec& grid, double lambda, double m_order,
                                 const MultiplierSpec& mult);

// -- random fields -----------------------------------------------------------

using Rng = std::mt19937_64;

/// Deterministic per-sample stream from (seed, family, index).
Rng make_rng(std::uint64_t seed, std::string_view family, std::uint64_t index);

/// Hermitian-symmetric complex Gaussian coefficients on modes with lo <= |xi| <= hi
/// (strict inequalities when `open` is set). Nyquist planes and the mean are left zero.
SpectralField random_band_field(const GridSpec& grid, double lo, double hi, Rng& rng,
                                bool open = false);
/// Leray-projected random vector field on the same band.
VectorField random_solenoidal_field(const GridSpec& grid, double lo, double hi, Rng& rng);

} // namespace gmhd
