// Lumped-parameter turbine power model.
#pragma once

namespace awe {

struct TurbineParams {
    double k1 = 0.0579;  ///< kW s^3/m^3, generation
    double k2 = 0.09;    ///< kW s^2/m^2, station keeping
    double k3 = 1.08;    ///< kW s^2/(m^2 km), altitude adjustment
    double rated_mps = 12.0;

    /// Throws std::invalid_argument unless every constant is strictly positive.
    void validate() const;
};

/// All terms in kW; net = p1 - p2 - p3 and may be negative.
struct PowerBreakdown {
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double net = 0.0;
};

/// `move_km` is the altitude change over the step (sign ignored), `wind_mps`
/// the wind speed experienced. Throws std::invalid_argument for negative wind.
PowerBreakdown power(const TurbineParams& params, double move_km, double wind_mps);

/// net only, without the argument checks; hot path for the objectives.
inline double net_power(const TurbineParams& p, double abs_move_km, double v) {
    const double g = v < p.rated_mps ? v : p.rated_mps;
    const double v2 = v * v;
    return p.k1 * g * g * g - p.k2 * v2 - p.k3 * v2 * abs_move_km;
}

}  // namespace awe
