#include "awe/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace awe {

const char* to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::ExpectedEnergy: return "expected";
        case ObjectiveKind::UCB: return "ucb";
        case ObjectiveKind::ProbImprovement: return "poi";
    }
    return "unknown";
}

ObjectiveKind parse_objective(std::string_view name) {
    if (name == "expected") return ObjectiveKind::ExpectedEnergy;
    if (name == "ucb") return ObjectiveKind::UCB;
    if (name == "poi") return ObjectiveKind::ProbImprovement;
    throw std::invalid_argument("unknown objective `" + std::string(name) + "`");
}

double ObjectiveSpec::floor() const {
    return log_floor.value_or(1.0 / (2.0 * static_cast<double>(n_quantiles)));
}

void ObjectiveSpec::validate() const {
    if (n_quantiles < 2) throw std::invalid_argument("n_quantiles must be >= 2");
    if (kind == ObjectiveKind::UCB && !(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("UCB alpha must lie in (0.5, 1)");
    const double f = floor();
    if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("log_floor must lie in (0, 1)");
}

std::vector<double> quantile_samples(const TruncatedGaussian& dist, std::size_t n) {
    if (n < 2) throw std::invalid_argument("need at least 2 quantiles");
    std::vector<double> out(n);
    const double dn = static_cast<double>(n);
    if (dist.degenerate()) {
        std::fill(out.begin(), out.end(), std::clamp(dist.mu, dist.lower, dist.upper));
        return out;
    }
    for (std::size_t q = 1; q < n; ++q) out[q - 1] = dist.quantile(static_cast<double>(q) / dn);
    out[n - 1] = dist.quantile(1.0 - 1.0 / (2.0 * dn));
    return out;
}

double expected_power(const TurbineParams& params, double move_km, std::span<const double> samples) {
    const double m = std::abs(move_km);
    double sum = 0.0;
    for (double v : samples) sum += net_power(params, m, v);
    return sum / static_cast<double>(samples.size());
}

double expected_power(const TurbineParams& params, double move_km, const TruncatedGaussian& dist,
                      std::size_t n) {
    const auto samples = quantile_samples(dist, n);
    return expected_power(params, move_km, samples);
}

double ucb_power(const TurbineParams& params, double move_km, std::span<const double> samples,
                 double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) throw std::invalid_argument("UCB alpha must lie in (0.5, 1)");
    const double m = std::abs(move_km);
    std::vector<double> p(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) p[i] = net_power(params, m, samples[i]);

    // ceil(alpha n); the slack absorbs representation error such as 0.54 * 100.
    const double n = static_cast<double>(p.size());
    auto rank = static_cast<std::size_t>(std::ceil(alpha * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, p.size());
    std::nth_element(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(rank - 1), p.end());
    return p[rank - 1];
}

double ucb_power(const TurbineParams& params, double move_km, const TruncatedGaussian& dist,
                 double alpha, std::size_t n) {
    const auto samples = quantile_samples(dist, n);
    return ucb_power(params, move_km, samples, alpha);
}

double log_prob_improvement(const TurbineParams& params, double move_km,
                            std::span<const double> samples, double threshold_kw, double log_floor) {
    const double m = std::abs(move_km);
    std::size_t count = 0;
    for (double v : samples)
        if (net_power(params, m, v) > threshold_kw) ++count;
    const double frac = static_cast<double>(count) / static_cast<double>(samples.size());
    return std::log(std::max(log_floor, frac));
}

double log_prob_improvement(const TurbineParams& params, double move_km,
                            const TruncatedGaussian& dist, double threshold_kw, std::size_t n,
                            double log_floor) {
    const auto samples = quantile_samples(dist, n);
    return log_prob_improvement(params, move_km, samples, threshold_kw, log_floor);
}

double stage_reward(const ObjectiveSpec& spec, const TurbineParams& params, double move_km,
                    std::span<const double> samples, const RewardContext& ctx) {
    switch (spec.kind) {
        case ObjectiveKind::ExpectedEnergy: return expected_power(params, move_km, samples);
        case ObjectiveKind::UCB: return ucb_power(params, move_km, samples, spec.alpha);
        case ObjectiveKind::ProbImprovement:
            if (!ctx.improvement_threshold_kw)
                throw std::invalid_argument("probability of improvement needs a threshold");
            return log_prob_improvement(params, move_km, samples, *ctx.improvement_threshold_kw,
                                        spec.floor());
    }
    throw std::logic_error("unhandled objective kind");
}

double stage_reward(const ObjectiveSpec& spec, const TurbineParams& params, double move_km,
                    const TruncatedGaussian& dist, const RewardContext& ctx) {
    const auto samples = quantile_samples(dist, spec.n_quantiles);
    return stage_reward(spec, params, move_km, samples, ctx);
}

}  // namespace awe
