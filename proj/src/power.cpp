#include "awe/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace awe {

void TurbineParams::validate() const {
    if (!(k1 > 0.0 && k2 > 0.0 && k3 > 0.0 && rated_mps > 0.0))
        throw std::invalid_argument("turbine constants k1, k2, k3 and rated speed must be > 0");
}

PowerBreakdown power(const TurbineParams& params, double move_km, double wind_mps) {
    if (!(wind_mps >= 0.0)) throw std::invalid_argument("wind speed must be >= 0");
    const double g = std::min(params.rated_mps, wind_mps);
    const double v2 = wind_mps * wind_mps;
    PowerBreakdown out;
    out.p1 = params.k1 * g * g * g;
    out.p2 = params.k2 * v2;
    out.p3 = params.k3 * v2 * std::abs(move_km);
    out.net = out.p1 - out.p2 - out.p3;
    return out;
}

}  // namespace awe
