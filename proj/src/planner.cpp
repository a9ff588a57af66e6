#include "awe/planner.hpp"

#include <limits>
#include <stdexcept>

namespace awe {

std::vector<int> feasible_actions(std::size_t levels, std::size_t level, int max_move) {
    if (level >= levels) throw std::out_of_range("altitude level out of range");
    const int lo = std::max(-max_move, -static_cast<int>(level));
    const int hi = std::min(max_move, static_cast<int>(levels - 1 - level));
    std::vector<int> out;
    for (int u = lo; u <= hi; ++u) out.push_back(u);
    return out;
}

namespace {

// 0, -1, +1, -2, +2, ...: the tie-break preference order.
std::vector<int> preference_order(int max_move) {
    std::vector<int> order{0};
    for (int m = 1; m <= max_move; ++m) {
        order.push_back(-m);
        order.push_back(m);
    }
    return order;
}

}  // namespace

Plan solve_dp(std::size_t levels, std::size_t h0, std::size_t stages, int max_move,
              const StageRewardFn& reward) {
    if (h0 >= levels) throw std::out_of_range("initial level out of range");
    if (stages == 0) throw std::invalid_argument("need at least one stage");
    if (max_move < 0) throw std::invalid_argument("max_move must be >= 0");

    const auto order = preference_order(max_move);
    const auto n = static_cast<long>(levels);

    // value[k][h]: best reward-to-go from level h having completed k stages.
    std::vector<std::vector<double>> value(stages + 1, std::vector<double>(levels, 0.0));
    std::vector<std::vector<int>> choice(stages, std::vector<int>(levels, 0));

    for (std::size_t k = stages; k-- > 0;) {
        for (std::size_t h = 0; h < levels; ++h) {
            double best = -std::numeric_limits<double>::infinity();
            int best_u = 0;
            for (int u : order) {
                const long dest = static_cast<long>(h) + u;
                if (dest < 0 || dest >= n) continue;
                const auto d = static_cast<std::size_t>(dest);
                const double v = reward(d, static_cast<std::size_t>(u < 0 ? -u : u), k + 1) +
                                 value[k + 1][d];
                if (v > best) {
                    best = v;
                    best_u = u;
                }
            }
            value[k][h] = best;
            choice[k][h] = best_u;
        }
    }

    Plan plan;
    plan.altitudes.reserve(stages);
    plan.actions.reserve(stages);
    plan.stage_rewards.reserve(stages);
    std::size_t h = h0;
    for (std::size_t k = 0; k < stages; ++k) {
        const int u = choice[k][h];
        h = static_cast<std::size_t>(static_cast<long>(h) + u);
        const double r = reward(h, static_cast<std::size_t>(u < 0 ? -u : u), k + 1);
        plan.actions.push_back(u);
        plan.altitudes.push_back(h);
        plan.stage_rewards.push_back(r);
        plan.total += r;
    }
    return plan;
}

void PlanningProblem::validate() const {
    if (h0 >= grid.size()) throw std::invalid_argument("h0 is not on the altitude grid");
    if (horizon == 0) throw std::invalid_argument("planning horizon must be >= 1 step");
    if (max_move < 1) throw std::invalid_argument("max_move must be >= 1 cell");
    if (horizon * static_cast<std::size_t>(max_move) < grid.size() - 1)
        throw std::invalid_argument("horizon too short to travel between any two altitudes");
    if (forecasts.levels() != grid.size() || forecasts.horizon() < horizon)
        throw std::invalid_argument("forecast does not cover the grid and horizon");
    spec.validate();
}

std::vector<std::vector<std::vector<double>>> reward_table(const PlanningProblem& problem) {
    const std::size_t levels = problem.grid.size();
    const auto moves = static_cast<std::size_t>(problem.max_move) + 1;
    std::vector<std::vector<std::vector<double>>> table(
        problem.horizon, std::vector<std::vector<double>>(levels, std::vector<double>(moves)));
    for (std::size_t lead = 1; lead <= problem.horizon; ++lead) {
        for (std::size_t level = 0; level < levels; ++level) {
            const auto samples =
                quantile_samples(problem.forecasts.at(level, lead), problem.spec.n_quantiles);
            for (std::size_t m = 0; m < moves; ++m) {
                const double km = static_cast<double>(m) * problem.grid.cell();
                table[lead - 1][level][m] =
                    stage_reward(problem.spec, problem.params, km, samples, problem.context);
            }
        }
    }
    return table;
}

Plan plan_horizon(const PlanningProblem& problem) {
    problem.validate();
    const auto table = reward_table(problem);
    return solve_dp(problem.grid.size(), problem.h0, problem.horizon, problem.max_move,
                    [&](std::size_t level, std::size_t abs_move, std::size_t stage) {
                        return table[stage - 1][level][abs_move];
                    });
}

}  // namespace awe
