#include "gmhd/solver.hpp"

#include "gmhd/errors.hpp"
#include "gmhd/format.hpp"
#include "gmhd/io.hpp"

#include <algorithm>
#include <cmath>

namespace gmhd {

void SolverConfig::validate() const {
    grid.validate();
    multiplier.validate();
    if (!(dt_policy.dt > 0.0)) throw ConfigError("dt must be > 0");
    if (dt_policy.kind == DtPolicy::Kind::cfl && !(dt_policy.safety > 0.0 && dt_policy.safety <= 1.0))
        throw ConfigError("cfl safety must lie in (0, 1]");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
    if (diag_every < 1) throw ConfigError("diag_every must be >= 1");
    if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
    if (hk_order < 0.0) throw ConfigError("hk_order must be >= 0");
}

// -- nonlinear terms ---------------------------------------------------------

namespace {

std::vector<std::vector<double>> to_physical(const VectorField& v) {
    std::vector<std::vector<double>> out;
    out.reserve(v.components.size());
    for (const auto& c : v.components) out.push_back(inverse(c));
    return out;
}

// grad[i][j] = d_j v_i in physical space
std::vector<std::vector<std::vector<double>>> gradient_physical(const VectorField& v) {
    const int n = v.dim();
    std::vector<std::vector<std::vector<double>>> g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i].push_back(inverse(derivative(v.components[i], j)));
    return g;
}

} // namespace

NonlinearTerms nonlinear_rhs(const State& s, bool dealias) {
    const GridSpec& grid = s.u.grid();
    const int n = grid.dim;
    VectorField u = s.u, b = s.b;
    if (dealias) {
        dealias_inplace(u);
        dealias_inplace(b);
    }
    const auto up = to_physical(u);
    const auto bp = to_physical(b);
    const auto gu = gradient_physical(u);
    const auto gb = gradient_physical(b);

    const std::size_t size = grid.size();
    NonlinearTerms out{VectorField::zeros(grid), VectorField::zeros(grid)};
    std::vector<double> fu(size), fb(size);
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        for (std::size_t x = 0; x < size; ++x) {
            double au = 0.0, ab = 0.0;
            for (int j = 0; j < n; ++j) {
                au += -up[j][x] * gu[i][j][x] + bp[j][x] * gb[i][j][x];
                ab += -up[j][x] * gb[i][j][x] + bp[j][x] * gu[i][j][x];
            }
            fu[x] = au;
            fb[x] = ab;
            finite = finite && std::isfinite(au) && std::isfinite(ab);
        }
        if (!finite) throw BlowUpSignal("non-finite nonlinear product at t = " + format_double(s.t));
        out.du.components[i] = forward(grid, std::span<const double>(fu));
        out.db.components[i] = forward(grid, std::span<const double>(fb));
    }
    if (dealias) {
        dealias_inplace(out.du);
        dealias_inplace(out.db);
    }
    out.du = leray_project(out.du);
    enforce_hermitian(out.du);
    enforce_hermitian(out.db);
    out.db.divergence_free = false;
    return out;
}

// -- time stepping -----------------------------------------------------------

Stepper::Stepper(SolverConfig config) : config_(std::move(config)) { config_.validate(); }

void Stepper::prepare(double dt) {
    if (dt == cached_dt_) return;
    const Lattice& lat = lattice(config_.grid);
    const MultiplierSpec& m = config_.multiplier;
    half_factor_.resize(lat.kmag.size());
    full_factor_.resize(lat.kmag.size());
    for (std::size_t i = 0; i < lat.kmag.size(); ++i) {
        const double sym = m.symbol(lat.kmag[i]);
        half_factor_[i] = std::exp(-0.5 * m.nu * sym * sym * dt);
        full_factor_[i] = std::exp(-m.nu * sym * sym * dt);
    }
    cached_dt_ = dt;
}

namespace {

VectorField scaled(const VectorField& v, const std::vector<double>& factor) {
    VectorField out = v;
    for (auto& c : out.components) {
        auto z = c.coeffs();
        for (std::size_t i = 0; i < z.size(); ++i) z[i] *= factor[i];
    }
    return out;
}

bool all_finite(const VectorField& v) {
    for (const auto& c : v.components)
        for (const Complex& z : c.coeffs())
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace

State Stepper::step(const State& s, double dt) {
    if (!(dt > 0.0)) throw ParameterError("dt must be > 0");
    prepare(dt);
    const bool dealias = config_.dealias;
    const auto& eh = half_factor_;
    const auto& ef = full_factor_;

    const NonlinearTerms k1 = nonlinear_rhs(s, dealias);

    State s2{scaled(VectorField(s.u).axpy(0.5 * dt, k1.du), eh), VectorField(s.b).axpy(0.5 * dt, k1.db),
             s.t + 0.5 * dt};
    const NonlinearTerms k2 = nonlinear_rhs(s2, dealias);

    const VectorField u_half = scaled(s.u, eh);
    State s3{VectorField(u_half).axpy(0.5 * dt, k2.du), VectorField(s.b).axpy(0.5 * dt, k2.db),
             s.t + 0.5 * dt};
    const NonlinearTerms k3 = nonlinear_rhs(s3, dealias);

    const VectorField u_full = scaled(s.u, ef);
    State s4{VectorField(u_full).axpy(dt, scaled(k3.du, eh)), VectorField(s.b).axpy(dt, k3.db), s.t + dt};
    const NonlinearTerms k4 = nonlinear_rhs(s4, dealias);

    VectorField mid = k2.du;
    mid += k3.du;
    State next;
    next.u = u_full;
    next.u.axpy(dt / 6.0, scaled(k1.du, ef));
    next.u.axpy(dt / 3.0, scaled(mid, eh));
    next.u.axpy(dt / 6.0, k4.du);

    next.b = s.b;
    next.b.axpy(dt / 6.0, k1.db);
    next.b.axpy(dt / 3.0, k2.db);
    next.b.axpy(dt / 3.0, k3.db);
    next.b.axpy(dt / 6.0, k4.db);

    next.u = leray_project(next.u);
    next.b = leray_project(next.b);
    enforce_hermitian(next.u);
    enforce_hermitian(next.b);
    next.t = s.t + dt;
    if (!all_finite(next.u) || !all_finite(next.b))
        throw BlowUpSignal("non-finite state after step at t = " + format_double(s.t));
    return next;
}

double Stepper::choose_dt(const State& s) const {
    if (config_.dt_policy.kind == DtPolicy::Kind::fixed) return config_.dt_policy.dt;
    const GridSpec& grid = config_.grid;
    std::vector<double> um(grid.size(), 0.0), bm(grid.size(), 0.0);
    for (const auto& c : s.u.components) {
        const auto x = inverse(c);
        for (std::size_t i = 0; i < x.size(); ++i) um[i] += x[i] * x[i];
    }
    for (const auto& c : s.b.components) {
        const auto x = inverse(c);
        for (std::size_t i = 0; i < x.size(); ++i) bm[i] += x[i] * x[i];
    }
    double vmax = 0.0;
    for (std::size_t i = 0; i < um.size(); ++i) vmax = std::max(vmax, std::sqrt(um[i]) + std::sqrt(bm[i]));
    if (!(vmax > 0.0)) return config_.dt_policy.dt;
    return std::min(config_.dt_policy.dt, config_.dt_policy.safety * grid.spacing() / vmax);
}

State step(const State& s, double dt, const SolverConfig& config) {
    Stepper stepper(config);
    return stepper.step(s, dt);
}

// -- initial data ------------------------------------------------------------

State state_from_physical(const GridSpec& grid, double t, const std::vector<std::vector<double>>& u,
                          const std::vector<std::vector<double>>& b) {
    if (static_cast<int>(u.size()) != grid.dim || static_cast<int>(b.size()) != grid.dim)
        throw ConfigError("expected " + std::to_string(grid.dim) + " components per field");
    State s;
    s.t = t;
    for (const auto& c : u) s.u.components.push_back(forward(grid, std::span<const double>(c)));
    for (const auto& c : b) s.b.components.push_back(forward(grid, std::span<const double>(c)));
    enforce_hermitian(s.u);
    enforce_hermitian(s.b);
    s.u = leray_project(s.u);
    s.b = leray_project(s.b);
    return s;
}

namespace {

void normalize_to(VectorField& v, double target) {
    const double l2 = l2_norm(v);
    if (l2 > 0.0) v *= target / l2;
}

} // namespace

State init_fields(const InitSpec& init, const GridSpec& grid) {
    grid.validate();
    const int n = grid.dim;
    State s;
    if (init.name == "taylor_green") {
        std::vector<std::vector<double>> u(n), b(n, std::vector<double>(grid.size(), 0.0));
        if (n == 2) {
            u[0] = sample(grid, [](const auto& x) { return std::sin(x[0]) * std::cos(x[1]); });
            u[1] = sample(grid, [](const auto& x) { return -std::cos(x[0]) * std::sin(x[1]); });
        } else {
            u[0] = sample(grid, [](const auto& x) { return std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]); });
            u[1] = sample(grid, [](const auto& x) { return -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]); });
            u[2].assign(grid.size(), 0.0);
        }
        s = state_from_physical(grid, 0.0, u, b);
    } else if (init.name == "orszag_tang_2d") {
        if (n != 2) throw ConfigError("orszag_tang_2d needs dim = 2");
        std::vector<std::vector<double>> u(2), b(2);
        u[0] = sample(grid, [](const auto& x) { return -2.0 * std::sin(x[1]); });
        u[1] = sample(grid, [](const auto& x) { return 2.0 * std::sin(x[0]); });
        b[0] = sample(grid, [](const auto& x) { return -std::sin(x[1]); });
        b[1] = sample(grid, [](const auto& x) { return std::sin(2.0 * x[0]); });
        s = state_from_physical(grid, 0.0, u, b);
    } else if (init.name == "random_band") {
        if (!(init.band[0] >= 0.0 && init.band[1] >= init.band[0]))
            throw ConfigError("random_band needs 0 <= band[0] <= band[1]");
        Rng ru = make_rng(init.seed, "init_u", 0);
        Rng rb = make_rng(init.seed, "init_b", 0);
        s.u = random_solenoidal_field(grid, init.band[0], init.band[1], ru);
        s.b = random_solenoidal_field(grid, init.band[0], init.band[1], rb);
        normalize_to(s.u, init.amplitude);
        normalize_to(s.b, init.amplitude);
    } else if (init.name == "from_snapshot") {
        s = read_snapshot(init.path);
        if (!(s.u.grid() == grid))
            throw ConfigError("snapshot grid (dim " + std::to_string(s.u.grid().dim) + ", N " +
                              std::to_string(s.u.grid().n) + ") does not match configured grid");
    } else {
        throw ConfigError("unknown initial condition '" + init.name + "'");
    }

    if (init.b_noise_amplitude > 0.0) {
        Rng r = make_rng(init.b_noise_seed, "b_noise", 0);
        VectorField noise = random_solenoidal_field(grid, init.b_noise_band[0], init.b_noise_band[1], r);
        normalize_to(noise, init.b_noise_amplitude);
        s.b += noise;
    }
    s.u.divergence_free = s.b.divergence_free = true;
    return s;
}

// -- run loop ----------------------------------------------------------------

RunResult run(const SolverConfig& config, State initial, const RunSinks& sinks) {
    Stepper stepper(config);
    RunResult res;
    const double hk = config.resolved_hk_order();
    State s = std::move(initial);

    auto record = [&](const State& st) {
        update_running(res.records, sample_record(st.u, st.b, st.t, config.multiplier, hk));
        if (sinks.on_record) sinks.on_record(res.records.back());
    };
    auto snapshot = [&](const State& st, long idx) {
        if (config.snapshot_every > 0 && sinks.on_snapshot) sinks.on_snapshot(st, idx);
    };

    record(s);
    snapshot(s, 0);

    const double t0 = s.t;
    const double span = config.t_end - t0;
    const bool fixed = config.dt_policy.kind == DtPolicy::Kind::fixed;
    // With a fixed policy, times are t0 + i dt exactly; a final short step
    // reaches t_end when the span is not a whole number of steps.
    long uniform_steps = 0;
    bool short_tail = false;
    if (fixed && span > 0.0) {
        const double ratio = span / config.dt_policy.dt;
        const double nearest = std::round(ratio);
        if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
            uniform_steps = static_cast<long>(nearest);
        } else {
            uniform_steps = static_cast<long>(std::floor(ratio));
            short_tail = true;
        }
    }
    const long total_fixed = uniform_steps + (short_tail ? 1 : 0);

    long idx = 0;
    bool recorded_last = true;
    while (fixed ? idx < total_fixed : s.t < config.t_end * (1.0 - 1e-14)) {
        double dt = 0.0, t_next = 0.0;
        if (fixed) {
            if (idx < uniform_steps) {
                dt = config.dt_policy.dt;
                t_next = idx + 1 == total_fixed ? config.t_end : t0 + (idx + 1) * dt;
            } else {
                dt = config.t_end - s.t;
                t_next = config.t_end;
            }
        } else {
            dt = std::min(stepper.choose_dt(s), config.t_end - s.t);
            t_next = s.t + dt;
            if (config.t_end - t_next <= 1e-14 * config.t_end) t_next = config.t_end;
        }
        try {
            State next = stepper.step(s, dt);
            next.t = t_next;
            s = std::move(next);
        } catch (const BlowUpSignal& e) {
            res.status = RunStatus::blow_up;
            res.message = e.what();
            break;
        }
        ++idx;
        const bool final = fixed ? idx == total_fixed : s.t >= config.t_end;
        recorded_last = false;
        if (idx % config.diag_every == 0 || final) {
            record(s);
            recorded_last = true;
        }
        if (config.snapshot_every > 0 && idx % config.snapshot_every == 0) snapshot(s, idx);
    }
    if (!recorded_last) record(s);
    res.steps = idx;
    res.final_state = std::move(s);
    return res;
}

} // namespace gmhd
