#include "awe/runner.hpp"

#include "awe/text.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace awe {

namespace {

nlohmann::ordered_json result_json(const SimResult& r) {
    nlohmann::ordered_json j;
    j["totals_kwh"] = {{"p1", r.p1_kwh}, {"p2", r.p2_kwh}, {"p3", r.p3_kwh}, {"net", r.net_kwh}};
    j["avg_power_kw"] = r.avg_power_kw;
    j["actualized_ratio"] = r.actualized_ratio;
    j["altitude_adjustments"] = r.adjustments();
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

WindFieldGrid load_field(const RunConfig& config) {
    if (config.wind_csv) return load_wind_csv(*config.wind_csv, config.dt_min);
    return generate_synthetic_field(config.synthetic_spec(), config.grid(), config.synthetic_steps,
                                    config.dt_min);
}

RunOutcome run_experiment(const RunConfig& config, const WindFieldGrid& field) {
    config.validate();
    const auto& grid = field.grid();
    const ScenarioSpec templ = config.scenario_template(grid);
    try {
        templ.validate(grid);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    RunOutcome out;
    for (auto sensor : config.sensors) {
        for (auto objective : config.objectives) {
            ScenarioOutcome s;
            s.spec = templ;
            s.spec.sensor = sensor;
            s.spec.objective.kind = objective;
            s.name = std::string(to_string(sensor)) + "_" + to_string(objective);
            out.scenarios.push_back(std::move(s));
        }
    }
    parallel_for(out.scenarios.size(), config.threads, [&](std::size_t i) {
        out.scenarios[i].result = simulate(out.scenarios[i].spec, field);
    });

    const std::size_t h0 = templ.start_level(grid);
    out.omniscient = omniscient_baseline(templ.params, field, h0, templ.max_move);
    set_actualized_ratio(out.omniscient, out.omniscient);
    out.fixed = fixed_altitude_baselines(templ.params, field);
    set_actualized_ratio(out.fixed.best, out.omniscient);
    set_actualized_ratio(out.fixed.worst, out.omniscient);
    for (auto& s : out.scenarios) set_actualized_ratio(s.result, out.omniscient);

    if (config.sweep_alphas)
        out.sweep = alpha_sweep(templ, field, *config.sweep_alphas, config.sensors, out.omniscient,
                                config.threads);

    auto& j = out.summary;
    j["config"] = to_json(config);
    j["field"] = {{"steps", field.steps()},
                  {"levels", field.levels()},
                  {"dt_min", field.dt_min()},
                  {"h_min_km", grid.h_min()},
                  {"h_max_km", grid.h_max()},
                  {"source", config.wind_csv ? "csv" : "synthetic"}};
    j["baselines"] = {{"omniscient_avg_kw", out.omniscient.avg_power_kw},
                      {"omniscient", result_json(out.omniscient)},
                      {"h_best_km", grid.altitude(out.fixed.best_level)},
                      {"h_worst_km", grid.altitude(out.fixed.worst_level)},
                      {"fixed_best", result_json(out.fixed.best)},
                      {"fixed_worst", result_json(out.fixed.worst)}};
    j["scenarios"] = nlohmann::ordered_json::array();
    for (const auto& s : out.scenarios) {
        auto entry = nlohmann::ordered_json{{"name", s.name},
                                            {"sensor", to_string(s.spec.sensor)},
                                            {"objective", to_string(s.spec.objective.kind)}};
        if (s.spec.objective.kind == ObjectiveKind::UCB) entry["alpha"] = s.spec.objective.alpha;
        entry.update(result_json(s.result));
        j["scenarios"].push_back(std::move(entry));
    }
    if (!out.sweep.empty()) {
        auto best = nlohmann::ordered_json::object();
        for (auto sensor : config.sensors) {
            const auto& row = best_alpha(out.sweep, sensor);
            best[to_string(sensor)] = {{"alpha", row.alpha},
                                       {"avg_power_kw", row.avg_power_kw},
                                       {"actualized_ratio", row.actualized_ratio}};
        }
        j["alpha_sweep_best"] = std::move(best);
    }
    return out;
}

std::string trajectory_csv(const SimResult& r, const WindFieldGrid& field) {
    const auto& grid = field.grid();
    std::string out = "step,time_label,altitude_km,u_km,wind_mps,p1_kw,p2_kw,p3_kw,net_kw\n";
    for (std::size_t t = 0; t < r.steps.size(); ++t) {
        const auto level = r.trajectory[t + 1];
        const auto& b = r.steps[t];
        out += std::to_string(t + 1);
        out += ',' + field.time_label(t + 1);
        out += ',' + format_double(grid.altitude(level));
        out += ',' + format_double(r.move(t) * grid.cell());
        out += ',' + format_double(field.at(t + 1, level));
        out += ',' + format_double(b.p1);
        out += ',' + format_double(b.p2);
        out += ',' + format_double(b.p3);
        out += ',' + format_double(b.net);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "sensor,alpha,avg_power_kw,actualized_ratio,p3_kwh,adjustments\n";
    for (const auto& row : rows) {
        out += to_string(row.sensor);
        out += ',' + format_double(row.alpha);
        out += ',' + format_double(row.avg_power_kw);
        out += ',' + format_double(row.actualized_ratio);
        out += ',' + format_double(row.p3_kwh);
        out += ',' + std::to_string(row.adjustments);
        out += '\n';
    }
    return out;
}

void write_outputs(const RunOutcome& outcome, const WindFieldGrid& field,
                   const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());
    for (const auto& s : outcome.scenarios)
        write_text(dir / ("trajectory_" + s.name + ".csv"), trajectory_csv(s.result, field));
    write_text(dir / "trajectory_omniscient.csv", trajectory_csv(outcome.omniscient, field));
    write_text(dir / "trajectory_fixed_best.csv", trajectory_csv(outcome.fixed.best, field));
    write_text(dir / "trajectory_fixed_worst.csv", trajectory_csv(outcome.fixed.worst, field));
    if (!outcome.sweep.empty()) write_text(dir / "alpha_sweep.csv", sweep_csv(outcome.sweep));
    write_text(dir / "summary.json", outcome.summary.dump(2) + "\n");
}

RunOutcome run(const RunConfig& config) {
    config.validate();
    const auto field = load_field(config);
    auto outcome = run_experiment(config, field);
    outcome.summary["generated_at"] = utc_now();
    write_outputs(outcome, field, config.out_dir);
    return outcome;
}

}  // namespace awe
