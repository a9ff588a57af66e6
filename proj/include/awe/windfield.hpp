// Ground-truth wind-speed field on a (time step x altitude level) grid.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace awe {

/// Uniformly spaced operating altitudes, in km.
class AltitudeGrid {
public:
    /// Throws std::invalid_argument unless h_max > h_min, cell > 0 and the band
    /// is an integer number of cells.
    static AltitudeGrid make(double h_min_km, double h_max_km, double cell_km);

    /// 0.15 .. 1.0 km every 50 m (18 levels).
    static AltitudeGrid standard() { return make(0.15, 1.0, 0.05); }

    double h_min() const { return h_min_; }
    double h_max() const { return h_max_; }
    double cell() const { return cell_; }
    std::size_t size() const { return levels_.size(); }
    double altitude(std::size_t level) const { return levels_.at(level); }
    const std::vector<double>& levels() const { return levels_; }

    /// Level index whose altitude is within half a cell of `km`.
    std::optional<std::size_t> level_of(double km) const;

    bool operator==(const AltitudeGrid&) const = default;

private:
    double h_min_ = 0.0;
    double h_max_ = 0.0;
    double cell_ = 0.0;
    std::vector<double> levels_;
};

enum class DataErrorKind {
    Io,
    MalformedHeader,
    NonMonotoneAltitudes,
    NonUniformAltitudes,
    RaggedRow,
    NonNumeric,
    NegativeValue,
    MissingValue,
    TooFewRows,
};

const char* to_string(DataErrorKind kind);

/// Raised for unusable wind data. `row` is the 1-based line number in the
/// file (header is line 1) and `col` the 1-based column; 0 when not applicable.
class DataError : public std::runtime_error {
public:
    DataError(DataErrorKind kind, std::size_t row, std::size_t col, const std::string& what);

    DataErrorKind kind() const { return kind_; }
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    DataErrorKind kind_;
    std::size_t row_;
    std::size_t col_;
};

/// Wind speeds in m/s indexed [time step][altitude level]. Immutable once built.
class WindFieldGrid {
public:
    /// Validates rectangular shape, finiteness and non-negativity.
    /// `time_labels` may be empty (labels default to the step index).
    WindFieldGrid(AltitudeGrid grid, double dt_min, std::vector<std::vector<double>> speeds,
                  std::vector<std::string> time_labels = {});

    const AltitudeGrid& grid() const { return grid_; }
    double dt_min() const { return dt_min_; }
    std::size_t steps() const { return speeds_.size(); }
    std::size_t levels() const { return grid_.size(); }

    /// Exact stored value; throws std::out_of_range on bad indices.
    double at(std::size_t t, std::size_t level) const;
    const std::vector<double>& profile(std::size_t t) const { return speeds_.at(t); }
    const std::vector<std::vector<double>>& speeds() const { return speeds_; }

    std::string time_label(std::size_t t) const;
    bool has_time_labels() const { return !time_labels_.empty(); }

private:
    AltitudeGrid grid_;
    double dt_min_;
    std::vector<std::vector<double>> speeds_;
    std::vector<std::string> time_labels_;
};

inline double wind_at(const WindFieldGrid& field, std::size_t t, std::size_t level) {
    return field.at(t, level);
}

/// Parameters of the seeded synthetic field: power-law mean profile, a diurnal
/// sinusoid whose phase lags with height, and AR(1) noise that is correlated
/// across altitude. Speeds are clamped at zero.
struct SyntheticFieldSpec {
    std::uint64_t seed = 1;
    double shear_exponent = 0.2;
    double ref_speed_mps = 7.5;
    double ref_altitude_km = 0.5;
    double diurnal_amplitude_mps = 1.5;
    double diurnal_period_steps = 48.0;
    double ar1_rho = 0.85;
    double noise_sd_mps = 2.0;
    double vertical_coherence_km = 0.3;

    void validate() const;
    /// Power-law mean speed at `km`.
    double mean_speed(double km) const;
};

WindFieldGrid generate_synthetic_field(const SyntheticFieldSpec& spec, const AltitudeGrid& grid,
                                       std::size_t steps, double dt_min = 30.0);

/// Reads the wind CSV format: header `time,<alt_m>,<alt_m>,...`, one row per
/// time step. Missing or bad cells are rejected, never imputed.
WindFieldGrid load_wind_csv(const std::filesystem::path& path, double dt_min = 30.0);
WindFieldGrid parse_wind_csv(const std::string& text, double dt_min = 30.0);

/// Shortest round-trip decimal representation for every value.
std::string format_wind_csv(const WindFieldGrid& field);
void write_wind_csv(const WindFieldGrid& field, const std::filesystem::path& path);

}  // namespace awe
