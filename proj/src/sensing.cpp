#include "awe/sensing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace awe {

const char* to_string(SensorConfig config) {
    switch (config) {
        case SensorConfig::Single: return "single";
        case SensorConfig::Multiple: return "multiple";
        case SensorConfig::Remote: return "remote";
    }
    return "unknown";
}

SensorConfig parse_sensor(std::string_view name) {
    if (name == "single") return SensorConfig::Single;
    if (name == "multiple") return SensorConfig::Multiple;
    if (name == "remote") return SensorConfig::Remote;
    throw std::invalid_argument("unknown sensor configuration `" + std::string(name) + "`");
}

bool ObservationSet::observed(std::size_t level) const {
    return std::binary_search(readings.begin(), readings.end(), Reading{level, 0.0},
                              [](const Reading& a, const Reading& b) { return a.level < b.level; });
}

double ObservationSet::speed(std::size_t level) const {
    auto it = std::lower_bound(readings.begin(), readings.end(), level,
                               [](const Reading& r, std::size_t l) { return r.level < l; });
    if (it == readings.end() || it->level != level)
        throw std::out_of_range("level " + std::to_string(level) + " not observed");
    return it->speed_mps;
}

ObservationSet observe(SensorConfig config, const WindFieldGrid& field, std::size_t t,
                       std::size_t hub) {
    if (t >= field.steps() || hub >= field.levels())
        throw std::out_of_range("observe: time or hub index out of range");

    std::size_t first = 0;
    std::size_t last = hub;
    switch (config) {
        case SensorConfig::Single: first = hub; break;
        case SensorConfig::Multiple: break;
        case SensorConfig::Remote: last = field.levels() - 1; break;
    }

    ObservationSet obs;
    obs.t = t;
    obs.readings.reserve(last - first + 1);
    for (std::size_t level = first; level <= last; ++level)
        obs.readings.push_back({level, field.at(t, level)});
    return obs;
}

std::size_t nearest_observed_altitude(const ObservationSet& obs, std::size_t level) {
    if (obs.readings.empty()) throw std::invalid_argument("empty observation set");
    std::size_t best = obs.readings.front().level;
    std::size_t best_dist = best > level ? best - level : level - best;
    // Readings ascend, so keeping the first minimum prefers the lower level.
    for (const auto& r : obs.readings) {
        const std::size_t dist = r.level > level ? r.level - level : level - r.level;
        if (dist < best_dist) {
            best = r.level;
            best_dist = dist;
        }
    }
    return best;
}

void ObservationHistory::append(ObservationSet obs) {
    if (obs.readings.empty()) throw std::invalid_argument("observation set must not be empty");
    if (!sets_.empty() && obs.t <= sets_.back().t)
        throw std::invalid_argument("observations must be appended in time order");
    std::vector<bool> row(levels_, false);
    for (std::size_t i = 0; i < obs.readings.size(); ++i) {
        const auto& r = obs.readings[i];
        if (r.level >= levels_) throw std::out_of_range("reading level out of range");
        if (i > 0 && r.level <= obs.readings[i - 1].level)
            throw std::invalid_argument("reading levels must be strictly increasing");
        if (!(r.speed_mps >= 0.0)) throw std::invalid_argument("reading speeds must be >= 0");
        row[r.level] = true;
    }
    mask_.push_back(std::move(row));
    sets_.push_back(std::move(obs));
}

const ObservationSet& ObservationHistory::latest() const {
    if (sets_.empty()) throw std::logic_error("observation history is empty");
    return sets_.back();
}

const ObservationSet* ObservationHistory::previous() const {
    if (sets_.size() < 2) return nullptr;
    return &sets_[sets_.size() - 2];
}

}  // namespace awe
