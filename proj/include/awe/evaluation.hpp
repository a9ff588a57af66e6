// Closed-loop simulation, baselines and metrics.
//
// Energy convention, shared by every trajectory source: the step from t to t+1
// earns net power with the true wind at the destination cell (t+1, h(t+1)) and
// the step's altitude change |h(t+1) - h(t)|.
#pragma once

#include "awe/forecast.hpp"
#include "awe/objectives.hpp"
#include "awe/power.hpp"
#include "awe/sensing.hpp"
#include "awe/windfield.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace awe {

struct ForecastPriors {
    Cov2 prior{0.25, 0.0, 1.0};
    std::size_t n_min = 10;
    /// Use `prior` for the whole run instead of learning online.
    bool freeze = false;

    DeltaStats make_stats() const;
};

struct ScenarioSpec {
    SensorConfig sensor = SensorConfig::Single;
    ObjectiveSpec objective;
    TurbineParams params;
    std::size_t horizon_steps = 3;
    int max_move = 6;
    double h_start_km = 0.5;
    ForecastPriors priors;

    /// Level of h_start_km on `grid`; throws std::invalid_argument if off-grid.
    std::size_t start_level(const AltitudeGrid& grid) const;
    void validate(const AltitudeGrid& grid) const;
};

struct SimResult {
    std::vector<std::size_t> trajectory;   ///< level at every time index 0..N-1
    std::vector<PowerBreakdown> steps;     ///< step t -> t+1, N-1 entries
    double dt_min = 30.0;
    double p1_kwh = 0.0;
    double p2_kwh = 0.0;
    double p3_kwh = 0.0;
    double net_kwh = 0.0;
    double duration_h = 0.0;
    double avg_power_kw = 0.0;
    double actualized_ratio = 0.0;  ///< filled by set_actualized_ratio

    /// Number of steps with a nonzero altitude change.
    std::size_t adjustments() const;
    /// Signed move of step t -> t+1, in cells.
    int move(std::size_t t) const;
};

/// Energy accounting for an arbitrary trajectory; checks the rate limit.
SimResult realize(const TurbineParams& params, const WindFieldGrid& field,
                  std::span<const std::size_t> trajectory, int max_move);

/// Observe, update statistics, forecast, plan, apply the first action, repeat.
SimResult simulate(const ScenarioSpec& scenario, const WindFieldGrid& field);

/// Exact DP over the whole record with perfect knowledge of the wind.
SimResult omniscient_baseline(const TurbineParams& params, const WindFieldGrid& field,
                              std::size_t h_start, int max_move);

struct FixedBaselines {
    std::size_t best_level = 0;
    std::size_t worst_level = 0;
    SimResult best;
    SimResult worst;
};

/// Highest- and lowest-producing constant altitudes (lowest level on ties).
FixedBaselines fixed_altitude_baselines(const TurbineParams& params, const WindFieldGrid& field);

/// ratio = avg / omniscient avg; exactly 1 for the omniscient run itself.
void set_actualized_ratio(SimResult& result, const SimResult& omniscient);

struct SweepRow {
    SensorConfig sensor;
    double alpha;
    double avg_power_kw;
    double actualized_ratio;
    double p3_kwh;
    std::size_t adjustments;
};

/// One UCB simulation per (sensor, alpha); rows grouped by sensor, then by
/// ascending alpha. Runs on up to `threads` workers (0 = hardware concurrency).
std::vector<SweepRow> alpha_sweep(const ScenarioSpec& templ, const WindFieldGrid& field,
                                  std::span<const double> alphas,
                                  std::span<const SensorConfig> sensors,
                                  const SimResult& omniscient, unsigned threads = 0);

/// a, a+step, ... up to b inclusive (with a small tolerance on the last point).
std::vector<double> alpha_grid(double a, double b, double step);

/// Best-avg-power row for `sensor` (lowest alpha on ties).
const SweepRow& best_alpha(std::span<const SweepRow> rows, SensorConfig sensor);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace awe
