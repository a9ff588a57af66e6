// Scenario matrix runner: every requested (sensor, objective) pair plus the
// omniscient and fixed-altitude baselines on one shared wind field.
#pragma once

#include "awe/config.hpp"
#include "awe/evaluation.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace awe {

struct ScenarioOutcome {
    ScenarioSpec spec;
    SimResult result;
    std::string name;  ///< e.g. "multiple_ucb"
};

struct RunOutcome {
    std::vector<ScenarioOutcome> scenarios;
    SimResult omniscient;
    FixedBaselines fixed;
    std::vector<SweepRow> sweep;
    nlohmann::ordered_json summary;
};

/// Field named by the config: the CSV if given, otherwise the synthetic spec.
WindFieldGrid load_field(const RunConfig& config);

/// Runs everything in memory; no files are written.
RunOutcome run_experiment(const RunConfig& config, const WindFieldGrid& field);

/// Writes trajectory_*.csv, summary.json and (with a sweep) alpha_sweep.csv.
void write_outputs(const RunOutcome& outcome, const WindFieldGrid& field,
                   const std::filesystem::path& dir);

std::string trajectory_csv(const SimResult& result, const WindFieldGrid& field);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// load_field + run_experiment + write_outputs, with a `generated_at` stamp.
RunOutcome run(const RunConfig& config);

}  // namespace awe
