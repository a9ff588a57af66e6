// awe-sim: run the altitude-control scenario matrix and write results.
//
// Exit codes: 0 success, 2 configuration error, 3 wind data error, 1 anything else.

#include "awe/config.hpp"
#include "awe/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

int fail(int code, const std::string& kind, const std::string& message,
         std::size_t row = 0, std::size_t col = 0) {
    nlohmann::ordered_json j{{"error", kind}, {"message", message}};
    if (row) j["row"] = row;
    if (col) j["col"] = col;
    std::cerr << j.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Airborne wind energy altitude-control simulator"};

    std::string config_file, wind, synthetic, sensors, objectives, sweep, out, dump_field;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<unsigned> threads;

    app.add_option("--config", config_file, "JSON experiment manifest; flags override it");
    auto* wind_opt = app.add_option("--wind", wind, "wind CSV (time,<altitudes in m>...)");
    app.add_option("--synthetic", synthetic, "JSON synthetic field spec")->excludes(wind_opt);
    app.add_option("--sensors", sensors, "comma list of single,multiple,remote");
    app.add_option("--objectives", objectives, "comma list of expected,ucb,poi");
    app.add_option("--alpha", alpha, "UCB confidence level in (0.5, 1)");
    app.add_option("--sweep-alpha", sweep, "UCB alpha sweep a:b:step, e.g. 0.52:0.98:0.02");
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "synthetic field seed");
    app.add_option("--steps", steps, "synthetic field length in steps");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--dump-field", dump_field, "also write the wind field used to this CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "ConfigError", e.what());
    }

    try {
        awe::RunConfig config = config_file.empty() ? awe::RunConfig{} : awe::load_config_file(config_file);
        if (!wind.empty()) {
            config.wind_csv = wind;
            config.synthetic.reset();
        }
        if (!synthetic.empty()) {
            config.synthetic = awe::load_synthetic_spec(synthetic, &config.synthetic_steps);
            config.wind_csv.reset();
        }
        if (!sensors.empty()) config.sensors = awe::parse_sensor_list(sensors);
        if (!objectives.empty()) config.objectives = awe::parse_objective_list(objectives);
        if (alpha) config.alpha = *alpha;
        if (!sweep.empty()) config.sweep_alphas = awe::parse_sweep(sweep);
        if (!out.empty()) config.out_dir = out;
        if (seed) config.seed = *seed;
        if (steps) config.synthetic_steps = *steps;
        if (threads) config.threads = *threads;

        const auto outcome = awe::run(config);
        if (!dump_field.empty()) awe::write_wind_csv(awe::load_field(config), dump_field);

        for (const auto& s : outcome.scenarios)
            std::cout << s.name << ": avg " << s.result.avg_power_kw << " kW, ratio "
                      << s.result.actualized_ratio << "\n";
        std::cout << "omniscient: avg " << outcome.omniscient.avg_power_kw << " kW\n"
                  << "results written to " << config.out_dir.string() << "\n";
        return 0;
    } catch (const awe::DataError& e) {
        return fail(3, awe::to_string(e.kind()), e.what(), e.row(), e.col());
    } catch (const awe::ConfigError& e) {
        return fail(2, "ConfigError", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(2, "ConfigError", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, "ConfigError", e.what());
    } catch (const std::exception& e) {
        return fail(1, "InternalError", e.what());
    }
}
