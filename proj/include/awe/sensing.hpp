// Which wind measurements the turbine sees at each step.
#pragma once

#include "awe/windfield.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace awe {

enum class SensorConfig {
    Single,    ///< one anemometer at the hub
    Multiple,  ///< anemometers along the tether: every level at or below the hub
    Remote,    ///< ground-based profiler: every level
};

const char* to_string(SensorConfig config);
/// Accepts "single", "multiple", "remote"; throws std::invalid_argument otherwise.
SensorConfig parse_sensor(std::string_view name);

struct Reading {
    std::size_t level;
    double speed_mps;

    bool operator==(const Reading&) const = default;
};

/// Measurements taken at one time step; levels strictly increasing, never empty.
struct ObservationSet {
    std::size_t t = 0;
    std::vector<Reading> readings;

    bool observed(std::size_t level) const;
    /// Speed at `level`; throws std::out_of_range if it was not observed.
    double speed(std::size_t level) const;
    bool operator==(const ObservationSet&) const = default;
};

ObservationSet observe(SensorConfig config, const WindFieldGrid& field, std::size_t t,
                       std::size_t hub);

/// Observed level closest to `level`; equidistant candidates resolve downward.
std::size_t nearest_observed_altitude(const ObservationSet& obs, std::size_t level);

/// Online record of what one simulation run has measured.
class ObservationHistory {
public:
    explicit ObservationHistory(std::size_t levels) : levels_(levels) {}

    /// Sets must arrive in increasing time order.
    void append(ObservationSet obs);

    bool empty() const { return sets_.empty(); }
    std::size_t levels() const { return levels_; }
    const ObservationSet& latest() const;
    /// Set recorded just before the latest one, if any.
    const ObservationSet* previous() const;
    const std::vector<ObservationSet>& sets() const { return sets_; }
    /// mask()[i][level] is true when sets()[i] holds a reading at that level.
    const std::vector<std::vector<bool>>& mask() const { return mask_; }

private:
    std::size_t levels_;
    std::vector<ObservationSet> sets_;
    std::vector<std::vector<bool>> mask_;
};

}  // namespace awe
