// Experiment configuration: JSON manifest plus command-line overrides.
//
// Units follow the model constants: altitudes in km, speeds in m/s, time in
// minutes.
#pragma once

#include "awe/evaluation.hpp"
#include "awe/objectives.hpp"
#include "awe/power.hpp"
#include "awe/sensing.hpp"
#include "awe/windfield.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace awe {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<std::filesystem::path> wind_csv;
    std::optional<SyntheticFieldSpec> synthetic;
    std::size_t synthetic_steps = 4416;  // 92 days of 30 min steps

    std::vector<SensorConfig> sensors{SensorConfig::Single, SensorConfig::Multiple,
                                      SensorConfig::Remote};
    std::vector<ObjectiveKind> objectives{ObjectiveKind::ExpectedEnergy, ObjectiveKind::UCB,
                                          ObjectiveKind::ProbImprovement};
    double alpha = 0.54;
    std::optional<std::vector<double>> sweep_alphas;
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;

    TurbineParams turbine;
    double h_min_km = 0.15;
    double h_max_km = 1.0;
    double cell_km = 0.05;
    double dt_min = 30.0;
    double horizon_min = 90.0;
    double r_max_km_per_min = 0.01;
    double h_start_km = 0.5;
    ForecastPriors priors;
    std::size_t n_quantiles = 100;
    unsigned threads = 0;

    AltitudeGrid grid() const;
    std::size_t horizon_steps() const;
    /// Cells per step allowed by r_max on `grid`.
    int max_move(const AltitudeGrid& grid) const;
    /// Scenario with every shared constant filled in; sensor/objective left default.
    ScenarioSpec scenario_template(const AltitudeGrid& grid) const;
    /// Synthetic spec with the seed override applied (default spec if none given).
    SyntheticFieldSpec synthetic_spec() const;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// Merges keys from a JSON manifest into `config`. Unknown keys are rejected.
void apply_config_json(RunConfig& config, const nlohmann::json& doc);
RunConfig load_config_file(const std::filesystem::path& path);
SyntheticFieldSpec load_synthetic_spec(const std::filesystem::path& path,
                                       std::size_t* steps = nullptr);
void apply_synthetic_json(SyntheticFieldSpec& spec, const nlohmann::json& doc,
                          std::size_t* steps = nullptr);

std::vector<SensorConfig> parse_sensor_list(std::string_view csv);
std::vector<ObjectiveKind> parse_objective_list(std::string_view csv);
/// "a:b:step" -> alpha_grid(a, b, step).
std::vector<double> parse_sweep(std::string_view spec);

nlohmann::ordered_json to_json(const RunConfig& config);

}  // namespace awe
