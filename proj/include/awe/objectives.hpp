// Stage rewards g(h, u, V) over a forecast distribution.
//
// All three objectives work on the same n-point quantile discretization of the
// wind forecast, so the non-Gaussian power distribution never needs a
// parametric form.
#pragma once

#include "awe/forecast.hpp"
#include "awe/power.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace awe {

enum class ObjectiveKind { ExpectedEnergy, UCB, ProbImprovement };

const char* to_string(ObjectiveKind kind);
/// Accepts "expected", "ucb", "poi".
ObjectiveKind parse_objective(std::string_view name);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::ExpectedEnergy;
    double alpha = 0.54;
    std::size_t n_quantiles = 100;
    /// Defaults to 1 / (2 n) when unset.
    std::optional<double> log_floor;

    double floor() const;
    void validate() const;
};

/// Wind quantiles at probabilities q/n, q = 1..n-1, plus 1 - 1/(2n) in place of
/// q = n (which would sit on the truncation bound).
std::vector<double> quantile_samples(const TruncatedGaussian& dist, std::size_t n);

/// Mean net power over the quantile samples.
double expected_power(const TurbineParams& params, double move_km, std::span<const double> samples);
double expected_power(const TurbineParams& params, double move_km, const TruncatedGaussian& dist,
                      std::size_t n);

/// Nearest-rank alpha quantile of the net power evaluated at each sample.
/// Computed on power values, since power is not monotone in wind past rated.
double ucb_power(const TurbineParams& params, double move_km, std::span<const double> samples,
                 double alpha);
double ucb_power(const TurbineParams& params, double move_km, const TruncatedGaussian& dist,
                 double alpha, std::size_t n);

/// log max(floor, fraction of samples whose net power strictly beats `threshold_kw`).
double log_prob_improvement(const TurbineParams& params, double move_km,
                            std::span<const double> samples, double threshold_kw, double log_floor);
double log_prob_improvement(const TurbineParams& params, double move_km,
                            const TruncatedGaussian& dist, double threshold_kw, std::size_t n,
                            double log_floor);

/// Per-decision inputs shared by every stage of one plan.
struct RewardContext {
    /// Stay-put power at the current altitude; required for ProbImprovement.
    std::optional<double> improvement_threshold_kw;
};

/// Dispatch on spec.kind. Throws std::invalid_argument when ProbImprovement
/// is requested without a threshold.
double stage_reward(const ObjectiveSpec& spec, const TurbineParams& params, double move_km,
                    std::span<const double> samples, const RewardContext& ctx);
double stage_reward(const ObjectiveSpec& spec, const TurbineParams& params, double move_km,
                    const TruncatedGaussian& dist, const RewardContext& ctx);

}  // namespace awe
