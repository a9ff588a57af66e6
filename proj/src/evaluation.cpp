#include "awe/evaluation.hpp"

#include "awe/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace awe {

DeltaStats ForecastPriors::make_stats() const {
    return freeze ? DeltaStats::frozen(prior) : DeltaStats(prior, n_min);
}

std::size_t ScenarioSpec::start_level(const AltitudeGrid& grid) const {
    const auto level = grid.level_of(h_start_km);
    if (!level || std::abs(grid.altitude(*level) - h_start_km) > 1e-9)
        throw std::invalid_argument("start altitude is not on the altitude grid");
    return *level;
}

void ScenarioSpec::validate(const AltitudeGrid& grid) const {
    params.validate();
    objective.validate();
    (void)start_level(grid);
    if (horizon_steps == 0) throw std::invalid_argument("horizon must be >= 1 step");
    if (max_move < 1) throw std::invalid_argument("max_move must be >= 1 cell");
}

std::size_t SimResult::adjustments() const {
    std::size_t n = 0;
    for (std::size_t t = 0; t + 1 < trajectory.size(); ++t)
        if (trajectory[t + 1] != trajectory[t]) ++n;
    return n;
}

int SimResult::move(std::size_t t) const {
    return static_cast<int>(trajectory.at(t + 1)) - static_cast<int>(trajectory.at(t));
}

SimResult realize(const TurbineParams& params, const WindFieldGrid& field,
                  std::span<const std::size_t> trajectory, int max_move) {
    if (trajectory.size() != field.steps())
        throw std::invalid_argument("trajectory length must equal the number of time steps");
    SimResult r;
    r.trajectory.assign(trajectory.begin(), trajectory.end());
    r.dt_min = field.dt_min();
    r.steps.reserve(trajectory.size() - 1);
    const double hours = field.dt_min() / 60.0;
    for (std::size_t t = 0; t + 1 < trajectory.size(); ++t) {
        const int u = r.move(t);
        if (std::abs(u) > max_move) throw std::invalid_argument("trajectory violates the rate limit");
        const auto b = power(params, std::abs(u) * field.grid().cell(), field.at(t + 1, trajectory[t + 1]));
        r.p1_kwh += b.p1 * hours;
        r.p2_kwh += b.p2 * hours;
        r.p3_kwh += b.p3 * hours;
        r.net_kwh += b.net * hours;
        r.steps.push_back(b);
    }
    r.duration_h = static_cast<double>(r.steps.size()) * hours;
    r.avg_power_kw = r.duration_h > 0.0 ? r.net_kwh / r.duration_h : 0.0;
    return r;
}

SimResult simulate(const ScenarioSpec& scenario, const WindFieldGrid& field) {
    const auto& grid = field.grid();
    scenario.validate(grid);
    if (field.steps() < 2) throw std::invalid_argument("simulation needs at least 2 time steps");

    PlanningProblem problem;
    problem.grid = grid;
    problem.horizon = scenario.horizon_steps;
    problem.max_move = scenario.max_move;
    problem.spec = scenario.objective;
    problem.params = scenario.params;

    ObservationHistory history(grid.size());
    DeltaStats stats = scenario.priors.make_stats();

    std::vector<std::size_t> trajectory;
    trajectory.reserve(field.steps());
    std::size_t hub = scenario.start_level(grid);
    trajectory.push_back(hub);

    for (std::size_t t = 0; t + 1 < field.steps(); ++t) {
        auto obs = observe(scenario.sensor, field, t, hub);
        stats = update_delta_stats(std::move(stats), history.empty() ? nullptr : &history.latest(), obs);
        history.append(std::move(obs));

        problem.h0 = hub;
        problem.forecasts = WindForecast::build(history, stats, scenario.horizon_steps);
        problem.context = {};
        if (scenario.objective.kind == ObjectiveKind::ProbImprovement)
            problem.context.improvement_threshold_kw =
                net_power(scenario.params, 0.0, history.latest().speed(hub));

        const Plan plan = plan_horizon(problem);
        hub = static_cast<std::size_t>(static_cast<long>(hub) + plan.actions.front());
        trajectory.push_back(hub);
    }
    return realize(scenario.params, field, trajectory, scenario.max_move);
}

SimResult omniscient_baseline(const TurbineParams& params, const WindFieldGrid& field,
                              std::size_t h_start, int max_move) {
    if (field.steps() < 2) throw std::invalid_argument("baseline needs at least 2 time steps");
    const double cell = field.grid().cell();
    const Plan plan = solve_dp(field.levels(), h_start, field.steps() - 1, max_move,
                               [&](std::size_t level, std::size_t abs_move, std::size_t stage) {
                                   return net_power(params, static_cast<double>(abs_move) * cell,
                                                    field.at(stage, level));
                               });
    std::vector<std::size_t> trajectory{h_start};
    trajectory.insert(trajectory.end(), plan.altitudes.begin(), plan.altitudes.end());
    return realize(params, field, trajectory, max_move);
}

FixedBaselines fixed_altitude_baselines(const TurbineParams& params, const WindFieldGrid& field) {
    FixedBaselines out;
    bool first = true;
    for (std::size_t level = 0; level < field.levels(); ++level) {
        const std::vector<std::size_t> traj(field.steps(), level);
        auto r = realize(params, field, traj, 0);
        if (first || r.net_kwh > out.best.net_kwh) {
            out.best = r;
            out.best_level = level;
        }
        if (first || r.net_kwh < out.worst.net_kwh) {
            out.worst = std::move(r);
            out.worst_level = level;
        }
        first = false;
    }
    return out;
}

void set_actualized_ratio(SimResult& result, const SimResult& omniscient) {
    result.actualized_ratio = result.avg_power_kw / omniscient.avg_power_kw;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> alpha_grid(double a, double b, double step) {
    if (!(step > 0.0) || !(b >= a)) throw std::invalid_argument("alpha grid needs a <= b and step > 0");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
        // Round to 1e-12 so 0.52 + 1 * 0.02 prints as 0.54.
        out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

std::vector<SweepRow> alpha_sweep(const ScenarioSpec& templ, const WindFieldGrid& field,
                                  std::span<const double> alphas,
                                  std::span<const SensorConfig> sensors,
                                  const SimResult& omniscient, unsigned threads) {
    std::vector<double> sorted(alphas.begin(), alphas.end());
    std::sort(sorted.begin(), sorted.end());
    for (double a : sorted)
        if (!(a > 0.5 && a < 1.0)) throw std::invalid_argument("sweep alphas must lie in (0.5, 1)");

    std::vector<SweepRow> rows(sorted.size() * sensors.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        ScenarioSpec s = templ;
        s.sensor = sensors[i / sorted.size()];
        s.objective.kind = ObjectiveKind::UCB;
        s.objective.alpha = sorted[i % sorted.size()];
        auto r = simulate(s, field);
        set_actualized_ratio(r, omniscient);
        rows[i] = {s.sensor, s.objective.alpha, r.avg_power_kw, r.actualized_ratio, r.p3_kwh,
                   r.adjustments()};
    });
    return rows;
}

const SweepRow& best_alpha(std::span<const SweepRow> rows, SensorConfig sensor) {
    const SweepRow* best = nullptr;
    for (const auto& row : rows) {
        if (row.sensor != sensor) continue;
        if (!best || row.avg_power_kw > best->avg_power_kw ||
            (row.avg_power_kw == best->avg_power_kw && row.alpha < best->alpha))
            best = &row;
    }
    if (!best) throw std::invalid_argument("no sweep rows for the requested sensor");
    return *best;
}

}  // namespace awe
