// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit on any failure.

#include "awe/config.hpp"
#include "awe/evaluation.hpp"
#include "awe/planner.hpp"
#include "awe/runner.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace awe;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Fail {
public:
    explicit Fail(Outcome& o) : o_(o) {}
    template <typename T>
    Fail& operator<<(const T& x) {
        s_ << x;
        return *this;
    }
    ~Fail() {
        o_.pass = false;
        if (o_.detail.empty()) o_.detail = s_.str();
    }

private:
    Outcome& o_;
    std::ostringstream s_;
};

const WindFieldGrid& default_field() {
    static const WindFieldGrid field = load_field(RunConfig{});
    return field;
}

ScenarioSpec default_scenario(SensorConfig sensor, ObjectiveKind kind, double alpha = 0.54) {
    auto s = RunConfig{}.scenario_template(AltitudeGrid::standard());
    s.sensor = sensor;
    s.objective.kind = kind;
    s.objective.alpha = alpha;
    return s;
}

Outcome power_points() {
    Outcome o;
    const TurbineParams p;
    const struct { double u, v, net; } cases[] = {{0.0, 12.0, 87.0912}, {0.3, 12.0, 40.4352}, {0.0, 17.0, 74.0412}};
    for (const auto& c : cases) {
        const double got = power(p, c.u, c.v).net;
        if (std::abs(got - c.net) > 1e-9) Fail(o) << "power(" << c.u << "," << c.v << ") = " << got;
    }
    return o;
}

Outcome saturation() {
    Outcome o;
    const TurbineParams p;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uu(0.0, 0.3), vv(p.rated_mps, 25.0), any(0.0, 25.0);
    const double p1_rated = power(p, 0.0, p.rated_mps).p1;
    for (int i = 0; i < 1000; ++i) {
        const double u = uu(rng), v = vv(rng), dv = 1e-3 + 1e-2 * uu(rng);
        const auto a = power(p, u, v), b = power(p, u, v + dv);
        if (a.p1 != p1_rated || b.p1 != p1_rated) Fail(o) << "p1 not saturated at v=" << v;
        if (!(b.net < a.net)) Fail(o) << "net not decreasing at v=" << v;
        const double w = any(rng);
        if (power(p, u, w).net > power(p, 0.0, w).net) Fail(o) << "moving beats staying at v=" << w;
    }
    return o;
}

Outcome quantile_round_trip() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu(-2.0, 19.0), lsig(std::log(0.01), std::log(50.0));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const TruncatedGaussian d{mu(rng), std::exp(lsig(rng))};
        for (int k = 1; k <= 99; ++k) {
            const double q = k / 100.0;
            const double x = d.quantile(q);
            if (x < 0.0 || x > 17.0) Fail(o) << "quantile outside [0,17]: " << x;
            worst = std::max(worst, std::abs(d.cdf(x) - q));
        }
    }
    if (worst > 1e-6) Fail(o) << "max |cdf(quantile(q)) - q| = " << worst;
    std::ostringstream d;
    d << "max err " << worst;
    o.detail += (o.detail.empty() ? "" : "; ") + d.str();
    return o;
}

Outcome objectives_vs_oracles() {
    Outcome o;
    const TurbineParams p;
    const oracle::Turbine ot;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mu(1.0, 16.0), sig(0.05, 16.0), mv(0.0, 0.3);
    double worst_e = 0.0;
    for (int i = 0; i < 50; ++i) {
        const TruncatedGaussian d{mu(rng), sig(rng)};
        const double u = mv(rng);
        const double err = std::abs(expected_power(p, u, d, 100) -
                                    oracle::expected_net_quadrature(ot, u, d.mu, d.sigma2));
        worst_e = std::max(worst_e, err);
    }
    if (worst_e > 0.5) Fail(o) << "expected_power error " << worst_e << " kW";
    double worst_u = 0.0;
    for (int i = 0; i < 6; ++i) {
        const TruncatedGaussian d{mu(rng), sig(rng)};
        const double u = (i % 2) ? mv(rng) : 0.0;
        for (double a : {0.54, 0.7, 0.9}) {
            const double mc = oracle::monte_carlo_power_quantile(ot, u, d.mu, d.sigma2, a, 1'000'000,
                                                                 1000 + static_cast<std::uint64_t>(i));
            worst_u = std::max(worst_u, std::abs(ucb_power(p, u, d, a, 100) - mc));
        }
    }
    if (worst_u > 1.0) Fail(o) << "ucb_power error " << worst_u << " kW";
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max err E ") + std::to_string(worst_e) +
                " UCB " + std::to_string(worst_u);
    return o;
}

Outcome dp_exactness() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> vel(0.0, 17.0), var(0.0, 6.0);
    const oracle::Turbine ot;
    const ObjectiveKind kinds[] = {ObjectiveKind::ExpectedEnergy, ObjectiveKind::UCB,
                                   ObjectiveKind::ProbImprovement};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t levels = 2 + rng() % 4;
        const std::size_t horizon = 1 + rng() % 3;
        const int min_move = static_cast<int>((levels - 1 + horizon - 1) / horizon);
        const int max_move = min_move + static_cast<int>(rng() % 2);

        PlanningProblem prob;
        prob.grid = AltitudeGrid::make(0.15, 0.15 + 0.05 * static_cast<double>(levels - 1), 0.05);
        prob.h0 = rng() % levels;
        prob.horizon = horizon;
        prob.max_move = max_move;
        prob.spec.kind = kinds[trial % 3];
        prob.spec.alpha = 0.54 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
        prob.spec.n_quantiles = 20;
        prob.context.improvement_threshold_kw = 30.0;
        prob.forecasts = WindForecast(0, levels, horizon);
        for (std::size_t l = 0; l < levels; ++l)
            for (std::size_t s = 1; s <= horizon; ++s) prob.forecasts.set(l, s, {vel(rng), var(rng)});
        const auto plan = plan_horizon(prob);
        const auto table = reward_table(prob);
        const double best = oracle::enumerate_best(levels, prob.h0, horizon, max_move,
                                                   [&](std::size_t l, std::size_t m, std::size_t s) {
                                                       return table[s - 1][l][m];
                                                   });
        if (plan.total != best) Fail(o) << "plan trial " << trial << ": " << plan.total << " vs " << best;

        const std::size_t steps = 2 + rng() % 5;  // up to 6 steps
        std::vector<std::vector<double>> speeds(steps, std::vector<double>(levels));
        for (auto& row : speeds)
            for (double& x : row) x = vel(rng);
        const WindFieldGrid field(prob.grid, 30.0, speeds);
        const std::size_t h0 = rng() % levels;
        const int mm = 1 + static_cast<int>(rng() % 2);
        const auto omni = omniscient_baseline(TurbineParams{}, field, h0, mm);
        double total = 0.0;
        for (const auto& b : omni.steps) total += b.net;
        const double obest = oracle::enumerate_best(
            levels, h0, steps - 1, mm, [&](std::size_t l, std::size_t m, std::size_t s) {
                return oracle::net(ot, 0.05 * static_cast<double>(m), speeds[s][l]);
            });
        if (total != obest) Fail(o) << "omniscient trial " << trial << ": " << total << " vs " << obest;
    }
    return o;
}

Outcome dominance() {
    Outcome o;
    const auto grid = AltitudeGrid::standard();
    const TurbineParams p;
    for (std::uint64_t f = 0; f < 20; ++f) {
        SyntheticFieldSpec spec;
        spec.seed = 500 + f;
        const auto field = generate_synthetic_field(spec, grid, 500);
        auto omni = omniscient_baseline(p, field, 7, 6);
        set_actualized_ratio(omni, omni);
        if (omni.actualized_ratio != 1.0) Fail(o) << "omniscient ratio " << omni.actualized_ratio;
        const auto fixed = fixed_altitude_baselines(p, field);
        if (!(omni.net_kwh >= fixed.best.net_kwh)) Fail(o) << "field " << f << ": omniscient < best fixed";
        if (!(fixed.best.net_kwh >= fixed.worst.net_kwh)) Fail(o) << "field " << f << ": best < worst fixed";
        std::vector<ScenarioSpec> specs;
        for (auto s : {SensorConfig::Single, SensorConfig::Multiple, SensorConfig::Remote})
            for (auto k : {ObjectiveKind::ExpectedEnergy, ObjectiveKind::UCB, ObjectiveKind::ProbImprovement})
                specs.push_back(default_scenario(s, k));
        std::vector<double> totals(specs.size());
        parallel_for(specs.size(), 0, [&](std::size_t i) { totals[i] = simulate(specs[i], field).net_kwh; });
        for (std::size_t i = 0; i < totals.size(); ++i) {
            if (!(omni.net_kwh >= totals[i])) Fail(o) << "field " << f << " scenario " << i << " beats omniscient";
        }
    }
    return o;
}

Outcome poi_fixed_altitude() {
    Outcome o;
    const auto r = simulate(default_scenario(SensorConfig::Single, ObjectiveKind::ProbImprovement), default_field());
    std::size_t later = 0;
    for (std::size_t t = 1; t + 1 < r.trajectory.size(); ++t)
        if (r.move(t) != 0) ++later;
    if (later != 0) Fail(o) << later << " adjustments after step 1";
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("total adjustments ") + std::to_string(r.adjustments());
    return o;
}

Outcome ucb_alpha_adjustment_cost() {
    Outcome o;
    const auto lo = simulate(default_scenario(SensorConfig::Multiple, ObjectiveKind::UCB, 0.54), default_field());
    const auto hi = simulate(default_scenario(SensorConfig::Multiple, ObjectiveKind::UCB, 0.7), default_field());
    if (!(hi.p3_kwh > lo.p3_kwh)) Fail(o) << "sum p3(0.7) = " << hi.p3_kwh << " <= sum p3(0.54) = " << lo.p3_kwh;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("p3 kWh 0.54: ") + std::to_string(lo.p3_kwh) +
                " 0.7: " + std::to_string(hi.p3_kwh);
    return o;
}

Outcome sensor_ordering() {
    Outcome o;
    const auto& field = default_field();
    const auto templ = default_scenario(SensorConfig::Single, ObjectiveKind::UCB);
    const auto omni = omniscient_baseline(templ.params, field, templ.start_level(field.grid()), templ.max_move);
    const auto alphas = alpha_grid(0.52, 0.98, 0.02);
    const std::vector<SensorConfig> sensors{SensorConfig::Single, SensorConfig::Multiple, SensorConfig::Remote};
    const auto rows = alpha_sweep(templ, field, alphas, sensors, omni, 0);
    const auto& s = best_alpha(rows, SensorConfig::Single);
    const auto& m = best_alpha(rows, SensorConfig::Multiple);
    const auto& r = best_alpha(rows, SensorConfig::Remote);
    if (!(r.avg_power_kw >= m.avg_power_kw && m.avg_power_kw >= s.avg_power_kw))
        Fail(o) << "ordering violated";
    std::ostringstream d;
    d << "remote " << r.avg_power_kw << " (a=" << r.alpha << "), multiple " << m.avg_power_kw << " (a=" << m.alpha
      << "), single " << s.avg_power_kw << " (a=" << s.alpha << ")";
    o.detail += (o.detail.empty() ? "" : "; ") + d.str();
    return o;
}

Outcome determinism() {
    Outcome o;
    RunConfig c;
    c.seed = 42;
    const auto a = run_experiment(c, load_field(c)).summary.dump();
    const auto b = run_experiment(c, load_field(c)).summary.dump();
    if (a != b) Fail(o) << "summary JSON differs between runs";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"power model point checks", power_points},
        {"saturation and movement invariants", saturation},
        {"truncated Gaussian quantile round trip", quantile_round_trip},
        {"expected and UCB power vs oracles", objectives_vs_oracles},
        {"DP exactness vs enumeration", dp_exactness},
        {"dominance on 20 synthetic fields", dominance},
        {"single-sensor PoI holds a fixed altitude", poi_fixed_altitude},
        {"UCB alpha 0.7 spends more on adjustments than 0.54", ucb_alpha_adjustment_cost},
        {"sensor ordering at best alpha", sensor_ordering},
        {"end-to-end determinism", determinism},
    };
    int failures = 0;
    int idx = 0;
    for (const auto& [name, fn] : criteria) {
        ++idx;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.pass) ++failures;
        std::printf("[%s] %2d %s (%.1f s)%s%s\n", out.pass ? "PASS" : "FAIL", idx, name, secs,
                    out.detail.empty() ? "" : ": ", out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", idx - failures, idx);
    return failures == 0 ? 0 : 1;
}
