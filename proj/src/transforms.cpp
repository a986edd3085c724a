// FFTW-backed forward/inverse transforms with the unitary torus normalization
// documented in spectral.hpp.

#include "gmhd/errors.hpp"
#include "gmhd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace gmhd {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// Planning is not thread-safe in FFTW; execution with new-array execute is.
// FFTW_ESTIMATE keeps plans (and therefore results) identical across runs.
fftw_plan plan_for(const GridSpec& grid, int sign) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, PlanPtr> plans;
    std::lock_guard lock(mutex);
    auto& slot = plans[{grid.dim, grid.n, sign}];
    if (!slot) {
        std::vector<Complex> scratch(grid.size());
        int dims[3] = {grid.n, grid.n, grid.n};
        slot.reset(fftw_plan_dft(grid.dim, dims, reinterpret_cast<fftw_complex*>(scratch.data()),
                                 reinterpret_cast<fftw_complex*>(scratch.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED));
        if (!slot) throw Error("FFTW failed to create a plan");
    }
    return slot.get();
}

void execute(const GridSpec& grid, int sign, std::vector<Complex>& data) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_for(grid, sign), p, p);
}

double forward_scale(const GridSpec& grid) {
    return std::pow(2.0 * kPi, 0.5 * grid.dim) / static_cast<double>(grid.size());
}

double inverse_scale(const GridSpec& grid) { return std::pow(2.0 * kPi, -0.5 * grid.dim); }

void check_size(const GridSpec& grid, std::size_t got) {
    grid.validate();
    if (got != grid.size())
        throw ConfigError("sample count " + std::to_string(got) + " does not match grid size " +
                          std::to_string(grid.size()));
}

} // namespace

SpectralField forward(const GridSpec& grid, std::span<const double> samples) {
    check_size(grid, samples.size());
    std::vector<Complex> data(samples.begin(), samples.end());
    execute(grid, FFTW_FORWARD, data);
    const double s = forward_scale(grid);
    for (auto& c : data) c *= s;
    return SpectralField(grid, std::move(data));
}

SpectralField forward(const GridSpec& grid, std::span<const Complex> samples) {
    check_size(grid, samples.size());
    std::vector<Complex> data(samples.begin(), samples.end());
    execute(grid, FFTW_FORWARD, data);
    const double s = forward_scale(grid);
    for (auto& c : data) c *= s;
    return SpectralField(grid, std::move(data));
}

std::vector<Complex> inverse_complex(const SpectralField& field) {
    std::vector<Complex> data(field.coeffs().begin(), field.coeffs().end());
    execute(field.grid(), FFTW_BACKWARD, data);
    const double s = inverse_scale(field.grid());
    for (auto& c : data) c *= s;
    return data;
}

std::vector<double> inverse(const SpectralField& field) {
    const auto z = inverse_complex(field);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].real();
    return out;
}

} // namespace gmhd
