// Spatially extended persistence forecast.
//
// The mean at any (altitude, lead) is the latest measurement at the nearest
// observed altitude. The variance is the quadratic form d * Sigma * d^T, where
// d = (altitude cells to that measurement, lead in steps) and Sigma is the
// zero-mean covariance of the per-cell and per-step finite differences seen so
// far. Distributions are truncated to [0, 17] m/s.
#pragma once

#include "awe/sensing.hpp"

#include <cstddef>
#include <vector>

namespace awe {

inline constexpr double kForecastLower = 0.0;
inline constexpr double kForecastUpper = 17.0;

/// Symmetric 2x2 matrix over (dX/dh per cell, dX/dt per step).
struct Cov2 {
    double hh = 0.0;
    double ht = 0.0;
    double tt = 0.0;

    /// d * this * d^T.
    double quadratic(double d_cells, double d_steps) const {
        return d_cells * d_cells * hh + 2.0 * d_cells * d_steps * ht + d_steps * d_steps * tt;
    }
    /// Nearest PSD matrix in the Frobenius sense (negative eigenvalues clamped to 0).
    Cov2 psd() const;
    bool operator==(const Cov2&) const = default;
};

/// Running zero-mean second moments of the spatial and temporal differences.
class DeltaStats {
public:
    DeltaStats() = default;
    DeltaStats(Cov2 prior, std::size_t n_min);

    /// A covariance that never changes, regardless of samples added.
    static DeltaStats frozen(Cov2 fixed);

    void add_spatial(double per_cell);
    void add_temporal(double per_step);
    void add_cross(double per_cell, double per_step);

    std::size_t n_space() const { return n_space_; }
    std::size_t n_time() const { return n_time_; }
    std::size_t n_cross() const { return n_cross_; }
    std::size_t n_min() const { return n_min_; }
    const Cov2& prior() const { return prior_; }
    bool is_frozen() const { return frozen_; }

    /// Estimated covariance; components without samples fall back to the prior.
    Cov2 estimate() const;
    /// The covariance the forecast uses: estimate() once both sample counts reach
    /// n_min, the prior before that.
    Cov2 active() const;

    bool operator==(const DeltaStats&) const = default;

private:
    Cov2 prior_{0.25, 0.0, 1.0};
    std::size_t n_min_ = 10;
    bool frozen_ = false;
    double sum_hh_ = 0.0;
    double sum_tt_ = 0.0;
    double sum_ht_ = 0.0;
    std::size_t n_space_ = 0;
    std::size_t n_time_ = 0;
    std::size_t n_cross_ = 0;
};

/// Adds the differences formable from `curr` (and `prev`, if given): one spatial
/// sample per vertically adjacent observed pair, one temporal sample per level
/// seen in both sets, and one cross sample where a level contributes both.
DeltaStats update_delta_stats(DeltaStats stats, const ObservationSet* prev,
                              const ObservationSet& curr);

/// Normal(mu, sigma2) conditioned on [lower, upper].
struct TruncatedGaussian {
    double mu = 0.0;
    double sigma2 = 0.0;
    double lower = kForecastLower;
    double upper = kForecastUpper;

    double cdf(double x) const;
    double pdf(double x) const;
    /// Inverse CDF for q in (0, 1); throws std::invalid_argument otherwise.
    double quantile(double q) const;
    /// True when the distribution is (numerically) a point mass.
    bool degenerate() const;
};

double persistence_mean(const ObservationHistory& hist, std::size_t level, std::size_t lead);
double persistence_variance(const DeltaStats& stats, std::size_t d_cells, std::size_t d_steps);
TruncatedGaussian forecast_distribution(const ObservationHistory& hist, const DeltaStats& stats,
                                        std::size_t level, std::size_t lead);

/// Forecast for every level and every lead 1..horizon, made from the latest
/// observation set.
class WindForecast {
public:
    WindForecast(std::size_t made_at, std::size_t levels, std::size_t horizon);

    static WindForecast build(const ObservationHistory& hist, const DeltaStats& stats,
                              std::size_t horizon);

    std::size_t made_at() const { return made_at_; }
    std::size_t levels() const { return levels_; }
    std::size_t horizon() const { return horizon_; }

    /// lead is 1-based.
    const TruncatedGaussian& at(std::size_t level, std::size_t lead) const;
    void set(std::size_t level, std::size_t lead, TruncatedGaussian dist);

private:
    std::size_t made_at_;
    std::size_t levels_;
    std::size_t horizon_;
    std::vector<TruncatedGaussian> dists_;
};

}  // namespace awe
