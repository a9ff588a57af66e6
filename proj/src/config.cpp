#include "awe/config.hpp"

#include "awe/text.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace awe {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [k, _] : obj.items())
        if (!known.contains(k)) throw ConfigError("unknown key `" + k + "` in " + std::string(where));
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("key `") + key + "` has the wrong type");
    }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("`" + std::string(s) + "` is not a number");
    return v;
}

}  // namespace

AltitudeGrid RunConfig::grid() const {
    try {
        return AltitudeGrid::make(h_min_km, h_max_km, cell_km);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::size_t RunConfig::horizon_steps() const {
    const double steps = horizon_min / dt_min;
    if (!(steps >= 1.0) || std::abs(steps - std::round(steps)) > 1e-9)
        throw ConfigError("horizon must be a whole number (>= 1) of time steps");
    return static_cast<std::size_t>(std::round(steps));
}

int RunConfig::max_move(const AltitudeGrid& grid) const {
    const double cells = r_max_km_per_min * dt_min / grid.cell();
    if (!(cells >= 1.0 - 1e-9)) throw ConfigError("r_max allows less than one cell per step");
    // Allow for representation error, e.g. 0.01 * 30 / 0.05.
    return static_cast<int>(std::floor(cells + 1e-9));
}

ScenarioSpec RunConfig::scenario_template(const AltitudeGrid& grid) const {
    ScenarioSpec s;
    s.params = turbine;
    s.objective.alpha = alpha;
    s.objective.n_quantiles = n_quantiles;
    s.horizon_steps = horizon_steps();
    s.max_move = max_move(grid);
    s.h_start_km = h_start_km;
    s.priors = priors;
    return s;
}

SyntheticFieldSpec RunConfig::synthetic_spec() const {
    SyntheticFieldSpec spec = synthetic.value_or(SyntheticFieldSpec{});
    if (seed) spec.seed = *seed;
    return spec;
}

void RunConfig::validate() const {
    if (wind_csv && synthetic)
        throw ConfigError("give exactly one wind source: --wind or --synthetic");
    if (sensors.empty()) throw ConfigError("no sensor configurations selected");
    if (objectives.empty()) throw ConfigError("no objectives selected");
    if (!(alpha > 0.5 && alpha < 1.0)) throw ConfigError("alpha must lie in (0.5, 1)");
    if (sweep_alphas)
        for (double a : *sweep_alphas)
            if (!(a > 0.5 && a < 1.0)) throw ConfigError("sweep alphas must lie in (0.5, 1)");
    if (!(dt_min > 0.0)) throw ConfigError("dt_min must be > 0");
    if (n_quantiles < 2) throw ConfigError("n_quantiles must be >= 2");
    if (synthetic_steps < 2) throw ConfigError("synthetic field needs at least 2 steps");
    try {
        turbine.validate();
        synthetic_spec().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto g = grid();
    (void)horizon_steps();
    (void)max_move(g);
    if (!g.level_of(h_start_km)) throw ConfigError("h_start_km is outside the altitude band");
    const auto& p = priors.prior;
    if (p.hh < 0.0 || p.tt < 0.0 || p.ht * p.ht > p.hh * p.tt + 1e-12)
        throw ConfigError("prior covariance must be positive semi-definite");
}

void apply_synthetic_json(SyntheticFieldSpec& spec, const json& doc, std::size_t* steps) {
    reject_unknown(doc, "synthetic spec",
                   {"seed", "shear_exponent", "ref_speed_mps", "ref_altitude_km",
                    "diurnal_amplitude_mps", "diurnal_period_steps", "ar1_rho", "noise_sd_mps",
                    "vertical_coherence_km", "steps"});
    read(doc, "seed", spec.seed);
    read(doc, "shear_exponent", spec.shear_exponent);
    read(doc, "ref_speed_mps", spec.ref_speed_mps);
    read(doc, "ref_altitude_km", spec.ref_altitude_km);
    read(doc, "diurnal_amplitude_mps", spec.diurnal_amplitude_mps);
    read(doc, "diurnal_period_steps", spec.diurnal_period_steps);
    read(doc, "ar1_rho", spec.ar1_rho);
    read(doc, "noise_sd_mps", spec.noise_sd_mps);
    read(doc, "vertical_coherence_km", spec.vertical_coherence_km);
    if (steps) read(doc, "steps", *steps);
}

SyntheticFieldSpec load_synthetic_spec(const std::filesystem::path& path, std::size_t* steps) {
    SyntheticFieldSpec spec;
    apply_synthetic_json(spec, read_json(path), steps);
    return spec;
}

void apply_config_json(RunConfig& c, const json& doc) {
    reject_unknown(doc, "config",
                   {"wind", "synthetic", "sensors", "objectives", "alpha", "sweep_alpha", "out",
                    "seed", "turbine", "grid", "forecast", "threads"});
    if (doc.contains("wind")) c.wind_csv = doc["wind"].get<std::string>();
    if (doc.contains("synthetic")) {
        SyntheticFieldSpec spec = c.synthetic.value_or(SyntheticFieldSpec{});
        apply_synthetic_json(spec, doc["synthetic"], &c.synthetic_steps);
        c.synthetic = spec;
    }
    if (doc.contains("sensors")) {
        c.sensors.clear();
        for (const auto& s : doc["sensors"]) c.sensors.push_back(parse_sensor(s.get<std::string>()));
    }
    if (doc.contains("objectives")) {
        c.objectives.clear();
        for (const auto& s : doc["objectives"])
            c.objectives.push_back(parse_objective(s.get<std::string>()));
    }
    read(doc, "alpha", c.alpha);
    if (doc.contains("sweep_alpha")) c.sweep_alphas = parse_sweep(doc["sweep_alpha"].get<std::string>());
    if (doc.contains("out")) c.out_dir = doc["out"].get<std::string>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    read(doc, "threads", c.threads);

    if (doc.contains("turbine")) {
        const auto& t = doc["turbine"];
        reject_unknown(t, "turbine", {"k1", "k2", "k3", "v_r"});
        read(t, "k1", c.turbine.k1);
        read(t, "k2", c.turbine.k2);
        read(t, "k3", c.turbine.k3);
        read(t, "v_r", c.turbine.rated_mps);
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        reject_unknown(g, "grid",
                       {"h_min_km", "h_max_km", "cell_km", "dt_min", "horizon_min",
                        "r_max_km_per_min", "h_start_km"});
        read(g, "h_min_km", c.h_min_km);
        read(g, "h_max_km", c.h_max_km);
        read(g, "cell_km", c.cell_km);
        read(g, "dt_min", c.dt_min);
        read(g, "horizon_min", c.horizon_min);
        read(g, "r_max_km_per_min", c.r_max_km_per_min);
        read(g, "h_start_km", c.h_start_km);
    }
    if (doc.contains("forecast")) {
        const auto& f = doc["forecast"];
        reject_unknown(f, "forecast", {"prior_cov", "n_min", "freeze", "n_quantiles"});
        if (f.contains("prior_cov")) {
            const auto m = f["prior_cov"].get<std::vector<std::vector<double>>>();
            if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2 || m[0][1] != m[1][0])
                throw ConfigError("prior_cov must be a symmetric 2x2 matrix");
            c.priors.prior = {m[0][0], m[0][1], m[1][1]};
        }
        read(f, "n_min", c.priors.n_min);
        read(f, "freeze", c.priors.freeze);
        read(f, "n_quantiles", c.n_quantiles);
    }
}

RunConfig load_config_file(const std::filesystem::path& path) {
    RunConfig c;
    try {
        apply_config_json(c, read_json(path));
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return c;
}

std::vector<SensorConfig> parse_sensor_list(std::string_view csv) {
    std::vector<SensorConfig> out;
    try {
        for (auto s : split(csv, ',')) out.push_back(parse_sensor(s));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

std::vector<ObjectiveKind> parse_objective_list(std::string_view csv) {
    std::vector<ObjectiveKind> out;
    try {
        for (auto s : split(csv, ',')) out.push_back(parse_objective(s));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

std::vector<double> parse_sweep(std::string_view spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("sweep must look like a:b:step");
    try {
        return alpha_grid(to_double(parts[0]), to_double(parts[1]), to_double(parts[2]));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    if (c.wind_csv) {
        j["wind"] = c.wind_csv->string();
    } else {
        const auto s = c.synthetic_spec();
        j["synthetic"] = {{"seed", s.seed},
                          {"shear_exponent", s.shear_exponent},
                          {"ref_speed_mps", s.ref_speed_mps},
                          {"ref_altitude_km", s.ref_altitude_km},
                          {"diurnal_amplitude_mps", s.diurnal_amplitude_mps},
                          {"diurnal_period_steps", s.diurnal_period_steps},
                          {"ar1_rho", s.ar1_rho},
                          {"noise_sd_mps", s.noise_sd_mps},
                          {"vertical_coherence_km", s.vertical_coherence_km},
                          {"steps", c.synthetic_steps}};
    }
    j["sensors"] = nlohmann::ordered_json::array();
    for (auto s : c.sensors) j["sensors"].push_back(to_string(s));
    j["objectives"] = nlohmann::ordered_json::array();
    for (auto o : c.objectives) j["objectives"].push_back(to_string(o));
    j["alpha"] = c.alpha;
    if (c.sweep_alphas) j["sweep_alphas"] = *c.sweep_alphas;
    j["turbine"] = {{"k1", c.turbine.k1}, {"k2", c.turbine.k2}, {"k3", c.turbine.k3},
                    {"v_r", c.turbine.rated_mps}};
    j["grid"] = {{"h_min_km", c.h_min_km},       {"h_max_km", c.h_max_km},
                 {"cell_km", c.cell_km},         {"dt_min", c.dt_min},
                 {"horizon_min", c.horizon_min}, {"r_max_km_per_min", c.r_max_km_per_min},
                 {"h_start_km", c.h_start_km}};
    const auto& p = c.priors.prior;
    j["forecast"] = {{"prior_cov", {{p.hh, p.ht}, {p.ht, p.tt}}},
                     {"n_min", c.priors.n_min},
                     {"freeze", c.priors.freeze},
                     {"n_quantiles", c.n_quantiles}};
    return j;
}

}  // namespace awe
