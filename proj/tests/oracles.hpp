#pragma once

// Slow reference implementations used only by tests. They share no code with
// the library beyond GridSpec indexing.

#include "gmhd/spectral.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using gmhd::Complex;
using gmhd::GridSpec;
using gmhd::kPi;

inline int wavenumber(const GridSpec& g, int i) { return i <= g.n / 2 ? i : i - g.n; }

inline std::vector<std::array<int, 3>> modes(const GridSpec& g) {
    std::vector<std::array<int, 3>> out;
    const int n3 = g.dim == 3 ? g.n : 1;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < n3; ++c) out.push_back({a, b, c});
    return out;
}

/// c(xi) = (2 pi)^{n/2} / N^n sum_x f(x) exp(-i x.xi), straight summation.
inline std::vector<Complex> direct_dft(const GridSpec& g, const std::vector<double>& f) {
    const auto idx = modes(g);
    const double h = 2.0 * kPi / g.n;
    const double scale = std::pow(2.0 * kPi, 0.5 * g.dim) / std::pow(static_cast<double>(g.n), g.dim);
    std::vector<Complex> c(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        Complex s = 0.0;
        for (std::size_t x = 0; x < idx.size(); ++x) {
            double phase = 0.0;
            for (int a = 0; a < g.dim; ++a) phase += h * idx[x][a] * wavenumber(g, idx[k][a]);
            s += f[x] * std::polar(1.0, -phase);
        }
        c[k] = scale * s;
    }
    return c;
}

/// f(x) = (2 pi)^{-n/2} sum_xi c(xi) exp(i x.xi), real part.
inline std::vector<double> direct_idft(const GridSpec& g, const std::vector<Complex>& c) {
    const auto idx = modes(g);
    const double h = 2.0 * kPi / g.n;
    const double scale = std::pow(2.0 * kPi, -0.5 * g.dim);
    std::vector<double> f(idx.size());
    for (std::size_t x = 0; x < idx.size(); ++x) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            double phase = 0.0;
            for (int a = 0; a < g.dim; ++a) phase += h * idx[x][a] * wavenumber(g, idx[k][a]);
            s += c[k] * std::polar(1.0, phase);
        }
        f[x] = (scale * s).real();
    }
    return f;
}

using Coeffs = std::vector<std::vector<Complex>>; // [component][flat]

inline bool retained(const GridSpec& g, const std::array<int, 3>& k) {
    for (int a = 0; a < g.dim; ++a)
        if (std::abs(k[a]) > g.n / 3) return false;
    return true;
}

/// Flat index of an integer wavevector, or -1 when outside the lattice.
inline long flat_of(const GridSpec& g, const std::array<int, 3>& k) {
    long f = 0;
    for (int a = 0; a < g.dim; ++a) {
        if (k[a] <= -g.n / 2 || k[a] > g.n / 2) return -1;
        f = f * g.n + (k[a] >= 0 ? k[a] : k[a] + g.n);
    }
    return f;
}

/// Coefficients of (v.grad) w by summing over all pairs p + q = xi of retained
/// modes: (2 pi)^{-n/2} sum_j v_j(p) i q_j w(q). Only retained xi are filled.
inline Coeffs advect(const GridSpec& g, const Coeffs& v, const Coeffs& w) {
    const auto idx = modes(g);
    std::vector<std::array<int, 3>> k(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (int a = 0; a < g.dim; ++a) k[i][a] = wavenumber(g, idx[i][a]);
    const double scale = std::pow(2.0 * kPi, -0.5 * g.dim);
    Coeffs out(g.dim, std::vector<Complex>(idx.size(), 0.0));
    for (std::size_t p = 0; p < idx.size(); ++p) {
        if (!retained(g, k[p])) continue;
        for (std::size_t q = 0; q < idx.size(); ++q) {
            if (!retained(g, k[q])) continue;
            std::array<int, 3> s{};
            for (int a = 0; a < g.dim; ++a) s[a] = k[p][a] + k[q][a];
            if (!retained(g, s)) continue;
            const long f = flat_of(g, s);
            Complex vdotq = 0.0;
            for (int j = 0; j < g.dim; ++j) vdotq += v[j][p] * Complex(0.0, k[q][j]);
            for (int c = 0; c < g.dim; ++c) out[c][f] += scale * vdotq * w[c][q];
        }
    }
    return out;
}

inline Coeffs project(const GridSpec& g, Coeffs w) {
    const auto idx = modes(g);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        double k[3] = {0, 0, 0}, k2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            k[a] = wavenumber(g, idx[i][a]);
            k2 += k[a] * k[a];
        }
        if (k2 == 0.0) continue;
        Complex dot = 0.0;
        for (int a = 0; a < g.dim; ++a) dot += k[a] * w[a][i];
        for (int a = 0; a < g.dim; ++a) w[a][i] -= k[a] * dot / k2;
    }
    return w;
}

/// Trapezoid rule on (t, y) samples.
inline double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

} // namespace oracle
