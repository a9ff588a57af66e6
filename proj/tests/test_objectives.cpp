#include "awe/objectives.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace awe;

namespace {

const TurbineParams kParams;

}  // namespace

TEST(QuantileSamples, TopNodeAvoidsBound) {
    const TruncatedGaussian d{8.0, 25.0};
    const auto s = quantile_samples(d, 100);
    ASSERT_EQ(s.size(), 100u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_LT(s.back(), 17.0);
    EXPECT_DOUBLE_EQ(s.back(), d.quantile(0.995));
    EXPECT_DOUBLE_EQ(s[49], d.quantile(0.5));
}

TEST(ExpectedPower, PointMassReducesToPowerModel) {
    EXPECT_NEAR(expected_power(kParams, 0.0, TruncatedGaussian{12.0, 0.0}, 100), 87.0912, 1e-9);
}

TEST(ExpectedPower, LinearInMovementTerm) {
    const TruncatedGaussian d{9.0, 6.0};
    const auto s = quantile_samples(d, 100);
    double m2 = 0.0;
    for (double v : s) m2 += v * v;
    m2 /= 100.0;
    EXPECT_NEAR(expected_power(kParams, 0.2, s), expected_power(kParams, 0.0, s) - kParams.k3 * 0.2 * m2, 1e-9);
}

TEST(ExpectedPower, MatchesQuadratureOracle) {
    // 10^6-node trapezoid of the truncated density gives 28.60858659055083 kW.
    const double quad = oracle::expected_net_quadrature({}, 0.0, 8.0, 4.0);
    EXPECT_NEAR(quad, 28.60858659055083, 1e-6);
    EXPECT_NEAR(expected_power(kParams, 0.0, TruncatedGaussian{8.0, 4.0}, 100), quad, 0.5);
}

TEST(ExpectedPower, BetweenExtremeQuantilePowers) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu(0.0, 17.0), var(0.0, 30.0), mv(0.0, 0.3);
    for (int i = 0; i < 200; ++i) {
        const auto s = quantile_samples(TruncatedGaussian{mu(rng), var(rng)}, 100);
        const double u = mv(rng);
        double lo = 1e300, hi = -1e300;
        for (double v : s) {
            lo = std::min(lo, net_power(kParams, u, v));
            hi = std::max(hi, net_power(kParams, u, v));
        }
        const double e = expected_power(kParams, u, s);
        EXPECT_GE(e, lo - 1e-9);
        EXPECT_LE(e, hi + 1e-9);
    }
}

TEST(UcbPower, PointMassEqualsPowerForEveryAlpha) {
    const TruncatedGaussian d{10.0, 0.0};
    for (double a : {0.51, 0.54, 0.7, 0.99})
        EXPECT_EQ(ucb_power(kParams, 0.1, d, a, 100), power(kParams, 0.1, 10.0).net);
}

TEST(UcbPower, NearestRankOrderStatistic) {
    const auto s = quantile_samples(TruncatedGaussian{11.0, 9.0}, 100);
    std::vector<double> p;
    for (double v : s) p.push_back(net_power(kParams, 0.0, v));
    std::sort(p.begin(), p.end());
    EXPECT_EQ(ucb_power(kParams, 0.0, s, 0.54), p[53]);
    EXPECT_EQ(ucb_power(kParams, 0.0, s, 0.7), p[69]);
    EXPECT_EQ(ucb_power(kParams, 0.0, s, 0.545), p[54]);
}

TEST(UcbPower, NondecreasingInAlpha) {
    const auto s = quantile_samples(TruncatedGaussian{12.5, 16.0}, 100);
    double prev = -1e300;
    for (int a = 51; a < 100; ++a) {
        const double v = ucb_power(kParams, 0.05, s, a / 100.0);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(UcbPower, MatchesMonteCarloOrderStatistic) {
    const double mc = oracle::monte_carlo_power_quantile({}, 0.0, 8.0, 4.0, 0.9, 1000000, 42);
    EXPECT_NEAR(ucb_power(kParams, 0.0, TruncatedGaussian{8.0, 4.0}, 0.9, 100), mc, 1.0);
}

TEST(UcbPower, RejectsAlphaOutsideRange) {
    EXPECT_THROW(ucb_power(kParams, 0.0, TruncatedGaussian{8.0, 4.0}, 0.5, 100), std::invalid_argument);
    EXPECT_THROW(ucb_power(kParams, 0.0, TruncatedGaussian{8.0, 4.0}, 1.0, 100), std::invalid_argument);
}

TEST(LogProbImprovement, CountsStrictExceedances) {
    std::vector<double> s(100, 5.0);
    for (int i = 0; i < 60; ++i) s[i] = 10.0;
    const double threshold = net_power(kParams, 0.0, 7.0);
    EXPECT_DOUBLE_EQ(log_prob_improvement(kParams, 0.0, s, threshold, 0.005), std::log(0.60));
}

TEST(LogProbImprovement, PointMassAtThresholdHitsFloor) {
    const TruncatedGaussian d{9.0, 0.0};
    const double threshold = power(kParams, 0.0, 9.0).net;
    EXPECT_DOUBLE_EQ(log_prob_improvement(kParams, 0.0, d, threshold, 100, 0.005), std::log(0.005));
}

TEST(LogProbImprovement, MovingNeverRaisesTheCount) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> mu(0.0, 17.0), var(0.0, 30.0), mv(0.01, 0.3);
    for (int i = 0; i < 300; ++i) {
        const TruncatedGaussian d{mu(rng), var(rng)};
        const auto s = quantile_samples(d, 100);
        const double threshold = net_power(kParams, 0.0, mu(rng));
        const double stay = log_prob_improvement(kParams, 0.0, s, threshold, 0.005);
        const double move = log_prob_improvement(kParams, mv(rng), s, threshold, 0.005);
        EXPECT_LE(move, stay);
        EXPECT_GE(move, std::log(0.005));
    }
}

TEST(StageReward, Dispatch) {
    const TruncatedGaussian d{9.5, 5.0};
    ObjectiveSpec spec;
    EXPECT_EQ(stage_reward(spec, kParams, 0.1, d, {}), expected_power(kParams, 0.1, d, 100));
    spec.kind = ObjectiveKind::UCB;
    spec.alpha = 0.7;
    EXPECT_EQ(stage_reward(spec, kParams, 0.1, d, {}), ucb_power(kParams, 0.1, d, 0.7, 100));
    spec.kind = ObjectiveKind::ProbImprovement;
    EXPECT_THROW(stage_reward(spec, kParams, 0.1, d, {}), std::invalid_argument);
    RewardContext ctx{net_power(kParams, 0.0, 9.5)};
    EXPECT_EQ(stage_reward(spec, kParams, 0.1, d, ctx),
              log_prob_improvement(kParams, 0.1, d, *ctx.improvement_threshold_kw, 100, 0.005));
    EXPECT_GE(stage_reward(spec, kParams, 0.0, d, ctx), stage_reward(spec, kParams, 0.3, d, ctx));
}

TEST(StageReward, AllObjectivesCollapseWithoutUncertainty) {
    const TruncatedGaussian d{7.25, 0.0};
    const double det = power(kParams, 0.15, 7.25).net;
    EXPECT_NEAR(expected_power(kParams, 0.15, d, 100), det, 1e-12);
    EXPECT_EQ(ucb_power(kParams, 0.15, d, 0.8, 100), det);
}

TEST(ObjectiveSpec, Validation) {
    ObjectiveSpec spec;
    EXPECT_DOUBLE_EQ(spec.floor(), 0.005);
    spec.kind = ObjectiveKind::UCB;
    spec.alpha = 0.4;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.alpha = 0.6;
    spec.n_quantiles = 1;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    EXPECT_EQ(parse_objective("poi"), ObjectiveKind::ProbImprovement);
    EXPECT_THROW(parse_objective("ei"), std::invalid_argument);
}
