#include "gmhd/io.hpp"

#include "gmhd/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>

namespace gmhd {

using nlohmann::json;
namespace fs = std::filesystem;

// -- raw f64 -----------------------------------------------------------------

namespace {

std::uint64_t to_little(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    else return __builtin_bswap64(v);
}

} // namespace

void write_f64(const fs::path& path, std::span<const double> values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    std::vector<std::uint64_t> raw(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) raw[i] = to_little(std::bit_cast<std::uint64_t>(values[i]));
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 8));
    if (!out) throw IoError("short write to " + path.string());
}

std::vector<double> read_f64(const fs::path& path, std::size_t expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != expected * 8)
        throw IoError(path.string() + " holds " + std::to_string(bytes) + " bytes, expected " +
                      std::to_string(expected * 8));
    in.seekg(0);
    std::vector<std::uint64_t> raw(expected);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw IoError("short read from " + path.string());
    std::vector<double> out(expected);
    for (std::size_t i = 0; i < expected; ++i) out[i] = std::bit_cast<double>(to_little(raw[i]));
    return out;
}

// -- snapshots ---------------------------------------------------------------

void write_snapshot(const fs::path& header, const State& s) {
    const GridSpec& grid = s.u.grid();
    const std::string stem = header.stem().string();
    const fs::path dir = header.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    json h;
    h["dim"] = grid.dim;
    h["N"] = grid.n;
    h["time"] = s.t;
    h["dtype"] = "f64";
    h["layout"] = "row-major physical samples";
    json fields = json::array(), files = json::array();
    auto emit = [&](const VectorField& v, char tag) {
        for (int i = 0; i < grid.dim; ++i) {
            const std::string name = std::string(1, tag) + std::to_string(i);
            const std::string file = stem + "_" + name + ".f64";
            write_f64(dir / file, inverse(v.components[i]));
            fields.push_back(name);
            files.push_back(file);
        }
    };
    emit(s.u, 'u');
    emit(s.b, 'b');
    h["fields"] = fields;
    h["files"] = files;
    std::ofstream out(header, std::ios::trunc);
    if (!out) throw IoError("cannot open " + header.string() + " for writing");
    out << h.dump(2) << '\n';
    if (!out) throw IoError("short write to " + header.string());
}

State read_snapshot(const fs::path& header) {
    std::ifstream in(header);
    if (!in) throw IoError("cannot open snapshot header " + header.string());
    json h;
    try {
        h = json::parse(in);
        const GridSpec grid = GridSpec::make(h.at("dim").get<int>(), h.at("N").get<int>());
        if (h.value("dtype", "f64") != "f64") throw IoError("snapshot dtype must be f64");
        const auto fields = h.at("fields").get<std::vector<std::string>>();
        std::vector<std::string> files;
        if (h.contains("files")) files = h.at("files").get<std::vector<std::string>>();
        if (files.empty())
            for (const auto& f : fields) files.push_back(header.stem().string() + "_" + f + ".f64");
        if (files.size() != fields.size()) throw IoError("snapshot fields and files differ in length");

        std::vector<std::vector<double>> u(grid.dim), b(grid.dim);
        std::set<std::string> seen;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string& f = fields[i];
            const bool ok = f.size() == 2 && (f[0] == 'u' || f[0] == 'b') && f[1] >= '0' && f[1] < '0' + grid.dim;
            if (!ok || !seen.insert(f).second) throw IoError("unexpected snapshot field '" + f + "'");
            auto data = read_f64(header.parent_path() / files[i], grid.size());
            (f[0] == 'u' ? u : b)[f[1] - '0'] = std::move(data);
        }
        if (seen.size() != static_cast<std::size_t>(2 * grid.dim))
            throw IoError("snapshot needs u0..u" + std::to_string(grid.dim - 1) + " and b0..b" +
                          std::to_string(grid.dim - 1));
        return state_from_physical(grid, h.at("time").get<double>(), u, b);
    } catch (const json::exception& e) {
        throw IoError("malformed snapshot header " + header.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw IoError("snapshot " + header.string() + ": " + e.what());
    }
}

// -- job configuration -------------------------------------------------------

namespace {

// Strict accessor over one JSON object: every key must be consumed.
class Reader {
public:
    Reader(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
        if (!j_.is_object()) throw ConfigError("expected an object", ptr_.empty() ? "/" : ptr_);
    }

    std::string at(const std::string& key) const { return ptr_ + "/" + key; }
    bool has(const std::string& key) {
        used_.insert(key);
        return j_.contains(key);
    }
    const json& raw(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number()) throw ConfigError("expected a number", at(key));
        return v.get<double>();
    }
    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError("expected an integer", at(key));
        return v.get<int>();
    }
    std::uint64_t u64(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError("expected a non-negative integer", at(key));
        return v.get<std::uint64_t>();
    }
    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) throw ConfigError("expected true or false", at(key));
        return v.get<bool>();
    }
    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError("expected a string", at(key));
        return v.get<std::string>();
    }
    std::array<double, 2> pair(const std::string& key, std::array<double, 2> fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ConfigError("expected [lo, hi]", at(key));
        return {v[0].get<double>(), v[1].get<double>()};
    }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!used_.count(key)) throw ConfigError("unknown key", at(key));
    }

private:
    const json& j_;
    std::string ptr_;
    std::set<std::string> used_;
};

// Runs `check` and re-raises its ConfigError/ParameterError against `ptr`.
template <class F>
void pointed(const std::string& ptr, F&& check) {
    try {
        check();
    } catch (const ConfigError& e) {
        if (!e.pointer().empty()) throw;
        throw ConfigError(e.what(), ptr);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what(), ptr);
    } catch (const UnsupportedError& e) {
        throw ConfigError(e.what(), ptr);
    }
}

GridSpec parse_grid(const json& j, const std::string& ptr) {
    Reader r(j, ptr);
    GridSpec g;
    g.dim = r.integer("dim", g.dim);
    g.n = r.integer("N", g.n);
    r.finish();
    if (g.dim != 2 && g.dim != 3) throw ConfigError("dim must be 2 or 3", r.at("dim"));
    pointed(r.at("N"), [&] { g.validate(); });
    return g;
}

MultiplierSpec parse_multiplier(const json& j, const std::string& ptr) {
    Reader r(j, ptr);
    MultiplierSpec m;
    m.alpha = r.number("alpha", m.alpha);
    const std::string family = r.string("g_family", to_string(m.g_family));
    pointed(r.at("g_family"), [&] { m.g_family = parse_g_family(family); });
    m.gamma = r.number("gamma", m.gamma);
    m.nu = r.number("nu", m.nu);
    r.finish();
    pointed(ptr, [&] { m.validate(); });
    return m;
}

DtPolicy parse_dt(const json& j, const std::string& ptr) {
    Reader r(j, ptr);
    DtPolicy d;
    const std::string kind = r.string("kind", "fixed");
    if (kind == "fixed") d.kind = DtPolicy::Kind::fixed;
    else if (kind == "cfl") d.kind = DtPolicy::Kind::cfl;
    else throw ConfigError("kind must be fixed or cfl", r.at("kind"));
    d.dt = r.number("dt", d.dt);
    d.safety = r.number("safety", d.safety);
    r.finish();
    if (!(d.dt > 0.0)) throw ConfigError("dt must be > 0", r.at("dt"));
    if (!(d.safety > 0.0 && d.safety <= 1.0)) throw ConfigError("safety must lie in (0, 1]", r.at("safety"));
    return d;
}

InitSpec parse_init(const json& j, const std::string& ptr) {
    Reader r(j, ptr);
    InitSpec s;
    s.name = r.string("name", s.name);
    s.seed = r.u64("seed", s.seed);
    s.band = r.pair("band", s.band);
    s.amplitude = r.number("amplitude", s.amplitude);
    s.path = r.string("path", s.path.string());
    s.b_noise_amplitude = r.number("b_noise_amplitude", s.b_noise_amplitude);
    s.b_noise_band = r.pair("b_noise_band", s.b_noise_band);
    s.b_noise_seed = r.u64("b_noise_seed", s.b_noise_seed);
    r.finish();
    static const std::set<std::string> names{"taylor_green", "orszag_tang_2d", "random_band", "from_snapshot"};
    if (!names.count(s.name)) throw ConfigError("unknown initial condition '" + s.name + "'", r.at("name"));
    if (s.name == "from_snapshot" && s.path.empty()) throw ConfigError("from_snapshot needs a path", r.at("path"));
    if (!(s.band[0] >= 0.0 && s.band[1] >= s.band[0])) throw ConfigError("need 0 <= lo <= hi", r.at("band"));
    if (!(s.b_noise_band[0] >= 0.0 && s.b_noise_band[1] >= s.b_noise_band[0]))
        throw ConfigError("need 0 <= lo <= hi", r.at("b_noise_band"));
    if (!(s.amplitude >= 0.0)) throw ConfigError("amplitude must be >= 0", r.at("amplitude"));
    if (!(s.b_noise_amplitude >= 0.0)) throw ConfigError("amplitude must be >= 0", r.at("b_noise_amplitude"));
    return s;
}

SolverConfig parse_solver(const json& j, const std::string& ptr, InitSpec* init) {
    Reader r(j, ptr);
    SolverConfig c;
    if (r.has("grid")) c.grid = parse_grid(r.raw("grid"), r.at("grid"));
    if (r.has("multiplier")) c.multiplier = parse_multiplier(r.raw("multiplier"), r.at("multiplier"));
    if (r.has("dt_policy")) c.dt_policy = parse_dt(r.raw("dt_policy"), r.at("dt_policy"));
    c.t_end = r.number("t_end", c.t_end);
    c.dealias = r.boolean("dealias", c.dealias);
    c.snapshot_every = r.integer("snapshot_every", c.snapshot_every);
    c.diag_every = r.integer("diag_every", c.diag_every);
    c.hk_order = r.number("hk_order", c.hk_order);
    if (r.has("init")) *init = parse_init(r.raw("init"), r.at("init"));
    r.finish();
    if (!(c.t_end > 0.0)) throw ConfigError("t_end must be > 0", r.at("t_end"));
    if (c.diag_every < 1) throw ConfigError("diag_every must be >= 1", r.at("diag_every"));
    if (c.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0", r.at("snapshot_every"));
    if (c.hk_order < 0.0) throw ConfigError("hk_order must be >= 0", r.at("hk_order"));
    if (init->name == "orszag_tang_2d" && c.grid.dim != 2)
        throw ConfigError("orszag_tang_2d needs dim = 2", r.at("init") + "/name");
    return c;
}

VerifyConfig parse_verify(const json& j, const std::string& ptr) {
    Reader r(j, ptr);
    VerifyConfig v;
    if (r.has("suites")) {
        const json& s = r.raw("suites");
        if (!s.is_array() || s.empty()) throw ConfigError("expected a non-empty array of names", r.at("suites"));
        v.suites.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_string()) throw ConfigError("expected a string", r.at("suites") + "/" + std::to_string(i));
            v.suites.push_back(s[i].get<std::string>());
        }
    }
    v.seed = r.u64("seed", v.seed);
    if (r.has("grid")) {
        const json& g = r.raw("grid");
        if (!g.is_number_integer()) throw ConfigError("expected an integer", r.at("grid"));
        v.grid = g.get<int>();
        pointed(r.at("grid"), [&] { GridSpec::make(2, *v.grid); });
    }
    r.finish();
    return v;
}

} // namespace

JobConfig parse_job_config(const json& j) {
    Reader r(j, "");
    JobConfig c;
    c.mode = r.string("mode", c.mode);
    if (c.mode != "run" && c.mode != "verify" && c.mode != "classify" && c.mode != "exponents")
        throw ConfigError("mode must be run, verify, classify or exponents", "/mode");
    if (r.has("solver")) c.solver = parse_solver(r.raw("solver"), "/solver", &c.init);
    if (r.has("init")) c.init = parse_init(r.raw("init"), "/init");
    if (r.has("verify")) c.verify = parse_verify(r.raw("verify"), "/verify");
    c.output_dir = r.string("output_dir", c.output_dir.string());
    c.rng_seed = r.u64("rng_seed", c.rng_seed);
    r.finish();
    return c;
}

JobConfig load_job_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what(), "/");
    }
    return parse_job_config(j);
}

json to_json(const SolverConfig& c) {
    return {
        {"grid", {{"dim", c.grid.dim}, {"N", c.grid.n}}},
        {"multiplier",
         {{"alpha", c.multiplier.alpha},
          {"g_family", to_string(c.multiplier.g_family)},
          {"gamma", c.multiplier.gamma},
          {"nu", c.multiplier.nu}}},
        {"dt_policy",
         {{"kind", c.dt_policy.kind == DtPolicy::Kind::fixed ? "fixed" : "cfl"},
          {"dt", c.dt_policy.dt},
          {"safety", c.dt_policy.safety}}},
        {"t_end", c.t_end},
        {"dealias", c.dealias},
        {"snapshot_every", c.snapshot_every},
        {"diag_every", c.diag_every},
        {"hk_order", c.resolved_hk_order()},
    };
}

json to_json(const InitSpec& s) {
    return {
        {"name", s.name},
        {"seed", s.seed},
        {"band", {s.band[0], s.band[1]}},
        {"amplitude", s.amplitude},
        {"path", s.path.string()},
        {"b_noise_amplitude", s.b_noise_amplitude},
        {"b_noise_band", {s.b_noise_band[0], s.b_noise_band[1]}},
        {"b_noise_seed", s.b_noise_seed},
    };
}

json to_json(const JobConfig& c) {
    json v = {{"suites", c.verify.suites}, {"seed", c.verify.seed}};
    if (c.verify.grid) v["grid"] = *c.verify.grid;
    return {
        {"mode", c.mode},
        {"solver", to_json(c.solver)},
        {"init", to_json(c.init)},
        {"verify", v},
        {"output_dir", c.output_dir.string()},
        {"rng_seed", c.rng_seed},
    };
}

json to_json(const RegimeReport& r) {
    return {
        {"alpha", r.alpha},
        {"beta", r.beta},
        {"g_family", to_string(r.g_family)},
        {"gamma", r.gamma},
        {"n", r.n},
        {"main_condition", r.main_condition},
        {"wu_condition", r.wu_condition},
        {"tao_condition", r.tao_condition},
    };
}

json to_json(const ExponentSet& e) {
    return {
        {"k", e.k},
        {"n", e.n},
        {"lambda", e.lambda},
        {"a", e.a},
        {"two_delta", e.two_delta},
        {"delta", e.delta},
        {"A", e.A},
        {"B", e.B},
        {"C", e.C},
        {"xi_grad", e.xi_grad},
        {"eta_hk", e.eta_hk},
        {"young_exponent", e.young_exponent()},
    };
}

} // namespace gmhd
