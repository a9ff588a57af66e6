#include "awe/windfield.hpp"

#include "awe/text.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace awe {

AltitudeGrid AltitudeGrid::make(double h_min_km, double h_max_km, double cell_km) {
    if (!(cell_km > 0.0) || !(h_max_km > h_min_km) || !(h_min_km >= 0.0))
        throw std::invalid_argument("altitude grid needs 0 <= h_min < h_max and cell > 0");
    const double span = h_max_km - h_min_km;
    const double cells = std::round(span / cell_km);
    if (std::abs(cells * cell_km - span) > 1e-9 * std::max(1.0, span))
        throw std::invalid_argument("altitude band is not a whole number of cells");

    AltitudeGrid g;
    g.h_min_ = h_min_km;
    g.h_max_ = h_max_km;
    g.cell_ = cell_km;
    const auto n = static_cast<std::size_t>(cells) + 1;
    g.levels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.levels_[i] = h_min_km + static_cast<double>(i) * cell_km;
    g.levels_.back() = h_max_km;
    return g;
}

std::optional<std::size_t> AltitudeGrid::level_of(double km) const {
    const double idx = std::round((km - h_min_) / cell_);
    if (idx < 0.0 || idx >= static_cast<double>(levels_.size())) return std::nullopt;
    const auto level = static_cast<std::size_t>(idx);
    if (std::abs(levels_[level] - km) > 0.5 * cell_) return std::nullopt;
    return level;
}

const char* to_string(DataErrorKind kind) {
    switch (kind) {
        case DataErrorKind::Io: return "Io";
        case DataErrorKind::MalformedHeader: return "MalformedHeader";
        case DataErrorKind::NonMonotoneAltitudes: return "NonMonotoneAltitudes";
        case DataErrorKind::NonUniformAltitudes: return "NonUniformAltitudes";
        case DataErrorKind::RaggedRow: return "RaggedRow";
        case DataErrorKind::NonNumeric: return "NonNumeric";
        case DataErrorKind::NegativeValue: return "NegativeValue";
        case DataErrorKind::MissingValue: return "MissingValue";
        case DataErrorKind::TooFewRows: return "TooFewRows";
    }
    return "Unknown";
}

DataError::DataError(DataErrorKind kind, std::size_t row, std::size_t col, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), row_(row),
      col_(col) {}

WindFieldGrid::WindFieldGrid(AltitudeGrid grid, double dt_min,
                             std::vector<std::vector<double>> speeds,
                             std::vector<std::string> time_labels)
    : grid_(std::move(grid)), dt_min_(dt_min), speeds_(std::move(speeds)),
      time_labels_(std::move(time_labels)) {
    if (!(dt_min_ > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!time_labels_.empty() && time_labels_.size() != speeds_.size())
        throw std::invalid_argument("one time label per row required");
    for (std::size_t t = 0; t < speeds_.size(); ++t) {
        if (speeds_[t].size() != grid_.size())
            throw std::invalid_argument("wind field row " + std::to_string(t) +
                                        " does not match the altitude grid");
        for (double v : speeds_[t])
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("wind speeds must be finite and non-negative");
    }
}

double WindFieldGrid::at(std::size_t t, std::size_t level) const {
    if (t >= speeds_.size() || level >= grid_.size())
        throw std::out_of_range("wind field index (" + std::to_string(t) + ", " +
                                std::to_string(level) + ") out of range");
    return speeds_[t][level];
}

std::string WindFieldGrid::time_label(std::size_t t) const {
    if (time_labels_.empty()) return std::to_string(t);
    return time_labels_.at(t);
}

void SyntheticFieldSpec::validate() const {
    if (!(ar1_rho >= 0.0 && ar1_rho < 1.0)) throw std::invalid_argument("ar1_rho must be in [0, 1)");
    if (!(noise_sd_mps >= 0.0)) throw std::invalid_argument("noise_sd must be >= 0");
    if (!(ref_speed_mps >= 0.0)) throw std::invalid_argument("ref_speed must be >= 0");
    if (!(ref_altitude_km > 0.0)) throw std::invalid_argument("ref_altitude must be > 0");
    if (!(diurnal_period_steps > 0.0)) throw std::invalid_argument("diurnal_period must be > 0");
    if (!(vertical_coherence_km > 0.0))
        throw std::invalid_argument("vertical_coherence must be > 0");
}

double SyntheticFieldSpec::mean_speed(double km) const {
    return ref_speed_mps * std::pow(km / ref_altitude_km, shear_exponent);
}

WindFieldGrid generate_synthetic_field(const SyntheticFieldSpec& spec, const AltitudeGrid& grid,
                                       std::size_t steps, double dt_min) {
    spec.validate();
    if (steps < 2) throw std::invalid_argument("synthetic field needs at least 2 steps");

    const std::size_t n = grid.size();
    std::vector<double> mean(n), scale(n), phase(n);
    const double ref = spec.mean_speed(spec.ref_altitude_km);
    for (std::size_t k = 0; k < n; ++k) {
        mean[k] = spec.mean_speed(grid.altitude(k));
        scale[k] = ref > 0.0 ? mean[k] / ref : 1.0;
        // Half a period of lag between the bottom and top of the band.
        phase[k] = std::numbers::pi * (grid.altitude(k) - grid.h_min()) / (grid.h_max() - grid.h_min());
    }

    const double rho_z = std::exp(-grid.cell() / spec.vertical_coherence_km);
    const double innov_z = std::sqrt(1.0 - rho_z * rho_z);
    const double innov_t = std::sqrt(1.0 - spec.ar1_rho * spec.ar1_rho);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    // Unit-variance noise field, correlated across altitude by a first-order
    // recursion and in time by AR(1).
    auto coherent_draw = [&](std::vector<double>& e) {
        e[0] = normal(rng);
        for (std::size_t k = 1; k < n; ++k) e[k] = rho_z * e[k - 1] + innov_z * normal(rng);
    };

    std::vector<double> noise(n), innov(n);
    coherent_draw(noise);

    std::vector<std::vector<double>> speeds(steps, std::vector<double>(n));
    for (std::size_t t = 0; t < steps; ++t) {
        if (t > 0) {
            coherent_draw(innov);
            for (std::size_t k = 0; k < n; ++k)
                noise[k] = spec.ar1_rho * noise[k] + innov_t * innov[k];
        }
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / spec.diurnal_period_steps;
        for (std::size_t k = 0; k < n; ++k) {
            const double diurnal = spec.diurnal_amplitude_mps * std::sin(angle - phase[k]);
            const double v = mean[k] + diurnal + spec.noise_sd_mps * scale[k] * noise[k];
            speeds[t][k] = std::max(0.0, v);
        }
    }
    return WindFieldGrid(grid, dt_min, std::move(speeds));
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool parse_whole(std::string_view s, long& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_whole(std::string_view s, double& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

WindFieldGrid parse_wind_csv(const std::string& text, double dt_min) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    // Header.
    std::string header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!trim(line).empty()) {
            header = line;
            break;
        }
    }
    if (header.empty()) throw DataError(DataErrorKind::MalformedHeader, 1, 0, "empty file");
    if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);

    const auto head = split_commas(header);
    if (head.size() < 3 || head[0] != "time")
        throw DataError(DataErrorKind::MalformedHeader, lineno, 1,
                        "header must be `time` followed by at least two altitudes in meters");
    std::vector<long> alt_m;
    for (std::size_t c = 1; c < head.size(); ++c) {
        long m = 0;
        if (!parse_whole(head[c], m) || m < 0)
            throw DataError(DataErrorKind::MalformedHeader, lineno, c + 1,
                            "altitude `" + std::string(head[c]) + "` is not an integer in meters");
        if (!alt_m.empty() && m <= alt_m.back())
            throw DataError(DataErrorKind::NonMonotoneAltitudes, lineno, c + 1,
                            "altitudes must be strictly increasing");
        alt_m.push_back(m);
    }
    const long spacing = alt_m[1] - alt_m[0];
    for (std::size_t i = 2; i < alt_m.size(); ++i)
        if (alt_m[i] - alt_m[i - 1] != spacing)
            throw DataError(DataErrorKind::NonUniformAltitudes, lineno, i + 2,
                            "altitudes must be uniformly spaced");
    const std::size_t header_line = lineno;

    auto grid = AltitudeGrid::make(static_cast<double>(alt_m.front()) / 1000.0,
                                   static_cast<double>(alt_m.back()) / 1000.0,
                                   static_cast<double>(spacing) / 1000.0);

    std::vector<std::vector<double>> speeds;
    std::vector<std::string> labels;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_commas(line);
        if (cells.size() != head.size())
            throw DataError(DataErrorKind::RaggedRow, lineno, 0,
                            "expected " + std::to_string(head.size()) + " cells, found " +
                                std::to_string(cells.size()));
        std::vector<double> row(alt_m.size());
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto cell = cells[c];
            if (cell.empty())
                throw DataError(DataErrorKind::MissingValue, lineno, c + 1, "empty cell");
            double v = 0.0;
            if (!parse_whole(cell, v) || !std::isfinite(v))
                throw DataError(DataErrorKind::NonNumeric, lineno, c + 1,
                                "`" + std::string(cell) + "` is not a number");
            if (v < 0.0)
                throw DataError(DataErrorKind::NegativeValue, lineno, c + 1, "negative wind speed");
            row[c - 1] = v;
        }
        labels.emplace_back(cells[0]);
        speeds.push_back(std::move(row));
    }
    if (speeds.size() < 2)
        throw DataError(DataErrorKind::TooFewRows, header_line, 0,
                        "at least two time rows are required");
    return WindFieldGrid(std::move(grid), dt_min, std::move(speeds), std::move(labels));
}

WindFieldGrid load_wind_csv(const std::filesystem::path& path, double dt_min) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(DataErrorKind::Io, 0, 0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_wind_csv(buf.str(), dt_min);
}

std::string format_wind_csv(const WindFieldGrid& field) {
    std::string out = "time";
    for (double km : field.grid().levels()) {
        out += ',';
        out += std::to_string(std::lround(km * 1000.0));
    }
    out += '\n';
    for (std::size_t t = 0; t < field.steps(); ++t) {
        out += field.time_label(t);
        for (double v : field.profile(t)) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

void write_wind_csv(const WindFieldGrid& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(DataErrorKind::Io, 0, 0, "cannot write " + path.string());
    out << format_wind_csv(field);
}

}  // namespace awe
