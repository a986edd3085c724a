#pragma once

// Pseudo-spectral integration of the viscous, non-resistive generalized MHD
// system on the periodic box:
//
//   u_t + (u.grad)u = -grad p + (b.grad)b - nu L^2 u,
//   b_t + (u.grad)b = (b.grad)u,
//   div u = div b = 0,
//
// with L the radial multiplier |xi|^alpha / g(|xi|). Pressure is removed by
// Leray projection, products are dealiased with the 2/3 rule, and time
// stepping is integrating-factor RK4 (the diagonal dissipation is integrated
// exactly; b has no linear part).

#include "gmhd/diagnostics.hpp"
#include "gmhd/spectral.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace gmhd {

struct DtPolicy {
    enum class Kind { fixed, cfl };
    Kind kind = Kind::fixed;
    double dt = 1e-3;     ///< fixed step, or upper bound for cfl
    double safety = 0.4;  ///< cfl safety factor in (0, 1]
};

/// Initial condition selection. Names: taylor_green, orszag_tang_2d,
/// random_band, from_snapshot. A band-limited solenoidal perturbation of b
/// can be added to any of them with b_noise_amplitude > 0.
struct InitSpec {
    std::string name = "taylor_green";
    std::uint64_t seed = 0;
    std::array<double, 2> band{4.0, 8.0};
    double amplitude = 1.0; ///< ||u||_2 (and ||b||_2) of random_band data
    std::filesystem::path path;
    double b_noise_amplitude = 0.0; ///< ||b_noise||_2
    std::array<double, 2> b_noise_band{4.0, 8.0};
    std::uint64_t b_noise_seed = 0;
};

struct SolverConfig {
    GridSpec grid{};
    MultiplierSpec multiplier{};
    DtPolicy dt_policy{};
    double t_end = 1.0;
    bool dealias = true;
    int snapshot_every = 0; ///< 0 disables periodic snapshots
    int diag_every = 1;
    double hk_order = 0.0; ///< 0 selects default_hk_order(dim)

    void validate() const;
    double resolved_hk_order() const { return hk_order > 0.0 ? hk_order : default_hk_order(grid.dim); }
};

struct State {
    VectorField u;
    VectorField b;
    double t = 0.0;
};

struct NonlinearTerms {
    VectorField du; ///< P[-(u.grad)u + (b.grad)b]
    VectorField db; ///< -(u.grad)b + (b.grad)u
};

/// Throws BlowUpSignal when a product is not finite.
NonlinearTerms nonlinear_rhs(const State& s, bool dealias = true);

/// One integrating-factor RK4 step; caches the exponential factors per dt.
class Stepper {
public:
    explicit Stepper(SolverConfig config);

    State step(const State& s, double dt);
    /// dt from the policy: fixed dt, or min(dt, safety * h / max(|u| + |b|)).
    double choose_dt(const State& s) const;
    const SolverConfig& config() const { return config_; }

private:
    void prepare(double dt);

    SolverConfig config_;
    double cached_dt_ = -1.0;
    std::vector<double> half_factor_; ///< exp(-nu m^2 dt / 2)
    std::vector<double> full_factor_; ///< exp(-nu m^2 dt)
};

State step(const State& s, double dt, const SolverConfig& config);

State init_fields(const InitSpec& init, const GridSpec& grid);

/// Uses the real parts of physical samples; projects both fields.
State state_from_physical(const GridSpec& grid, double t, const std::vector<std::vector<double>>& u,
                          const std::vector<std::vector<double>>& b);

enum class RunStatus { completed, blow_up };

struct RunSinks {
    std::function<void(const DiagRecord&)> on_record;
    std::function<void(const State&, long step)> on_snapshot;
};

struct RunResult {
    State final_state;
    std::vector<DiagRecord> records;
    RunStatus status = RunStatus::completed;
    std::string message;
    long steps = 0;
};

/// Advances to t_end, emitting a record at the start, every diag_every steps
/// and at the end. A blow-up signal stops the run with a record of the last
/// finite state.
RunResult run(const SolverConfig& config, State initial, const RunSinks& sinks = {});

} // namespace gmhd
