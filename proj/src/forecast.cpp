#include "awe/forecast.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace awe {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Lower and upper standard normal tails, both accurate far into the tail.
double norm_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }
double norm_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double norm_cdf_inv(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }
double norm_sf_inv(double p) { return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

}  // namespace

Cov2 Cov2::psd() const {
    const double tr_half = 0.5 * (hh + tt);
    const double diff_half = 0.5 * (hh - tt);
    const double r = std::hypot(diff_half, ht);
    const double l1 = tr_half + r;
    const double l2 = tr_half - r;
    if (l2 >= 0.0) return *this;
    if (l1 <= 0.0) return {};
    // Keep only the leading eigenpair.
    double ex = 0.0, ey = 0.0;
    if (r == 0.0) {
        ex = 1.0;
    } else if (diff_half >= 0.0) {
        ex = diff_half + r;
        ey = ht;
    } else {
        ex = ht;
        ey = r - diff_half;
    }
    const double norm2 = ex * ex + ey * ey;
    return {l1 * ex * ex / norm2, l1 * ex * ey / norm2, l1 * ey * ey / norm2};
}

DeltaStats::DeltaStats(Cov2 prior, std::size_t n_min) : prior_(prior.psd()), n_min_(n_min) {}

DeltaStats DeltaStats::frozen(Cov2 fixed) {
    DeltaStats s(fixed, 0);
    s.frozen_ = true;
    return s;
}

void DeltaStats::add_spatial(double per_cell) {
    if (frozen_) return;
    sum_hh_ += per_cell * per_cell;
    ++n_space_;
}

void DeltaStats::add_temporal(double per_step) {
    if (frozen_) return;
    sum_tt_ += per_step * per_step;
    ++n_time_;
}

void DeltaStats::add_cross(double per_cell, double per_step) {
    if (frozen_) return;
    sum_ht_ += per_cell * per_step;
    ++n_cross_;
}

Cov2 DeltaStats::estimate() const {
    if (frozen_) return prior_;
    Cov2 c = prior_;
    if (n_space_ > 0) c.hh = sum_hh_ / static_cast<double>(n_space_);
    if (n_time_ > 0) c.tt = sum_tt_ / static_cast<double>(n_time_);
    if (n_cross_ > 0) c.ht = sum_ht_ / static_cast<double>(n_cross_);
    return c.psd();
}

Cov2 DeltaStats::active() const {
    if (frozen_) return prior_;
    if (std::min(n_space_, n_time_) >= n_min_) return estimate();
    return prior_;
}

DeltaStats update_delta_stats(DeltaStats stats, const ObservationSet* prev,
                              const ObservationSet& curr) {
    const auto& rs = curr.readings;
    const bool have_prev = prev != nullptr && !prev->readings.empty() && prev->t < curr.t;
    const double gap = have_prev ? static_cast<double>(curr.t - prev->t) : 1.0;

    for (std::size_t i = 0; i < rs.size(); ++i) {
        const bool has_up = i + 1 < rs.size() && rs[i + 1].level == rs[i].level + 1;
        const double spatial = has_up ? rs[i + 1].speed_mps - rs[i].speed_mps : 0.0;
        if (has_up) stats.add_spatial(spatial);

        if (have_prev && prev->observed(rs[i].level)) {
            const double temporal = (rs[i].speed_mps - prev->speed(rs[i].level)) / gap;
            stats.add_temporal(temporal);
            if (has_up) stats.add_cross(spatial, temporal);
        }
    }
    return stats;
}

bool TruncatedGaussian::degenerate() const {
    if (!(sigma2 > 0.0)) return true;
    const double sigma = std::sqrt(sigma2);
    const double za = (lower - mu) / sigma;
    const double zb = (upper - mu) / sigma;
    const double mass = za > 0.0 ? norm_sf(za) - norm_sf(zb) : norm_cdf(zb) - norm_cdf(za);
    return !(mass > 0.0);
}

double TruncatedGaussian::cdf(double x) const {
    if (x < lower) return 0.0;
    if (x >= upper) return 1.0;
    if (degenerate()) return x >= std::clamp(mu, lower, upper) ? 1.0 : 0.0;
    const double sigma = std::sqrt(sigma2);
    const double za = (lower - mu) / sigma;
    const double zb = (upper - mu) / sigma;
    const double zx = (x - mu) / sigma;
    double p = 0.0;
    if (za > 0.0) {
        const double sa = norm_sf(za);
        p = (sa - norm_sf(zx)) / (sa - norm_sf(zb));
    } else {
        const double pa = norm_cdf(za);
        p = (norm_cdf(zx) - pa) / (norm_cdf(zb) - pa);
    }
    return std::clamp(p, 0.0, 1.0);
}

double TruncatedGaussian::pdf(double x) const {
    if (x < lower || x > upper || degenerate()) return 0.0;
    const double sigma = std::sqrt(sigma2);
    const double za = (lower - mu) / sigma;
    const double zb = (upper - mu) / sigma;
    const double mass = za > 0.0 ? norm_sf(za) - norm_sf(zb) : norm_cdf(zb) - norm_cdf(za);
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi) * mass);
}

double TruncatedGaussian::quantile(double q) const {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("quantile probability must lie in (0, 1), got " +
                                    std::to_string(q));
    if (degenerate()) return std::clamp(mu, lower, upper);

    const double sigma = std::sqrt(sigma2);
    const double za = (lower - mu) / sigma;
    const double zb = (upper - mu) / sigma;
    double z = 0.0;
    if (za > 0.0) {
        // Whole window in the upper tail: work with survival probabilities.
        const double sa = norm_sf(za);
        const double p = sa - q * (sa - norm_sf(zb));
        if (p <= 0.0) return upper;
        if (p >= 1.0) return lower;
        z = norm_sf_inv(p);
    } else {
        const double pa = norm_cdf(za);
        const double p = pa + q * (norm_cdf(zb) - pa);
        if (p <= 0.0) return lower;
        if (p >= 1.0) return upper;
        z = norm_cdf_inv(p);
    }
    return std::clamp(mu + sigma * z, lower, upper);
}

double persistence_mean(const ObservationHistory& hist, std::size_t level, std::size_t /*lead*/) {
    if (hist.empty()) throw std::logic_error("persistence forecast needs at least one observation");
    const auto& obs = hist.latest();
    return obs.speed(nearest_observed_altitude(obs, level));
}

double persistence_variance(const DeltaStats& stats, std::size_t d_cells, std::size_t d_steps) {
    const double v = stats.active().quadratic(static_cast<double>(d_cells),
                                              static_cast<double>(d_steps));
    return std::max(0.0, v);
}

TruncatedGaussian forecast_distribution(const ObservationHistory& hist, const DeltaStats& stats,
                                        std::size_t level, std::size_t lead) {
    if (hist.empty()) throw std::logic_error("persistence forecast needs at least one observation");
    const auto& obs = hist.latest();
    const std::size_t source = nearest_observed_altitude(obs, level);
    const std::size_t cells = source > level ? source - level : level - source;
    return {obs.speed(source), persistence_variance(stats, cells, lead)};
}

WindForecast::WindForecast(std::size_t made_at, std::size_t levels, std::size_t horizon)
    : made_at_(made_at), levels_(levels), horizon_(horizon), dists_(levels * horizon) {}

WindForecast WindForecast::build(const ObservationHistory& hist, const DeltaStats& stats,
                                 std::size_t horizon) {
    WindForecast fc(hist.latest().t, hist.levels(), horizon);
    for (std::size_t level = 0; level < hist.levels(); ++level)
        for (std::size_t lead = 1; lead <= horizon; ++lead)
            fc.set(level, lead, forecast_distribution(hist, stats, level, lead));
    return fc;
}

const TruncatedGaussian& WindForecast::at(std::size_t level, std::size_t lead) const {
    if (level >= levels_ || lead == 0 || lead > horizon_)
        throw std::out_of_range("forecast index out of range");
    return dists_[level * horizon_ + (lead - 1)];
}

void WindForecast::set(std::size_t level, std::size_t lead, TruncatedGaussian dist) {
    if (level >= levels_ || lead == 0 || lead > horizon_)
        throw std::out_of_range("forecast index out of range");
    dists_[level * horizon_ + (lead - 1)] = dist;
}

}  // namespace awe
