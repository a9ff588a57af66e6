// Receding-horizon altitude planning by backward dynamic programming.
//
// Dynamics are h(k+1) = h(k) + u(k) on the altitude grid with |u| <= max_move
// cells. Stage k (1-based) is the transition into altitude h(k); its reward is
// evaluated at the destination level with the forecast for lead k, so every
// move is charged exactly once.
#pragma once

#include "awe/forecast.hpp"
#include "awe/objectives.hpp"
#include "awe/power.hpp"
#include "awe/windfield.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace awe {

struct Plan {
    std::vector<std::size_t> altitudes;  ///< levels h(1..T)
    std::vector<int> actions;            ///< u(0..T-1) in cells
    std::vector<double> stage_rewards;
    double total = 0.0;                  ///< sum of stage_rewards, in stage order
};

/// All u with |u| <= max_move and level + u on the grid, ascending.
std::vector<int> feasible_actions(std::size_t levels, std::size_t level, int max_move);
inline std::vector<int> feasible_actions(const AltitudeGrid& grid, std::size_t level, int max_move) {
    return feasible_actions(grid.size(), level, max_move);
}

/// Reward for arriving at `level` in `stage` (1-based) after moving `abs_move` cells.
using StageRewardFn = std::function<double(std::size_t level, std::size_t abs_move, std::size_t stage)>;

/// Exact optimum over every feasible action sequence of length `stages`.
/// Ties go to the smallest |u|, then to the downward move.
Plan solve_dp(std::size_t levels, std::size_t h0, std::size_t stages, int max_move,
              const StageRewardFn& reward);

struct PlanningProblem {
    AltitudeGrid grid = AltitudeGrid::standard();
    std::size_t h0 = 0;
    std::size_t horizon = 3;
    int max_move = 6;
    ObjectiveSpec spec;
    TurbineParams params;
    RewardContext context;
    WindForecast forecasts{0, 0, 0};

    /// Throws std::invalid_argument when h0 is off-grid, the forecast does not
    /// cover the grid and horizon, or horizon * max_move cannot span the band.
    void validate() const;
};

/// Reward table [stage-1][level][|u|] for the problem's objective.
std::vector<std::vector<std::vector<double>>> reward_table(const PlanningProblem& problem);

Plan plan_horizon(const PlanningProblem& problem);

}  // namespace awe
