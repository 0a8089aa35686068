// SPDX-License-Identifier: Apache-2.0
//
// Runtime experiment configuration and the key-value config file format
// shared by the command-line tools.

#ifndef TIA_EXPERIMENT_CONFIG_HPP
#define TIA_EXPERIMENT_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tia/dof.hpp"

namespace tia {

enum class ExperimentMode {
    uncoordinated,
    coordinated,
    satellite,
};

std::string to_string(ExperimentMode mode);

/// Grid and refinement resolution of the delay optimizer. gauge pins the
/// first transmitter's delay (the objective is invariant to a common shift,
/// so one coordinate is free).
struct OptimizerSettings {
    int grid = 128;
    int refine = 4096;
    double gauge = 0.0;
};

/// Validated settings for one Monte Carlo run.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::uncoordinated;
    DutyCycle rho{0.5};
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    OptimizerSettings optimizer;
    int workers = 0;  // 0 = one per hardware thread

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Parse failure with the 1-based line and the offending key; line 0 means
/// the file could not be read.
class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(int line, std::string field, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    int line_;
    std::string field_;
};

/// Fields of a config file; every key is optional so the command line can
/// fill mode-specific defaults afterwards.
struct ExperimentFileConfig {
    std::optional<ExperimentMode> mode;
    std::optional<double> rho;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<int> refine;
    std::optional<int> workers;
    std::optional<double> slot_seconds;                        // key: T_seconds
    std::optional<std::array<double, 3>> satellite_longitudes; // key: sat_longitudes
    std::optional<std::pair<double, double>> ground_lat_range; // key: ground_lat_range
    std::optional<std::pair<double, double>> ground_lon_range; // key: ground_lon_range
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// ignored, keys may appear at most once. Throws ConfigParseError.
ExperimentFileConfig parse_experiment_text(const std::string& text);

/// Reads and parses a config file. Throws ConfigParseError.
ExperimentFileConfig parse_experiment_file(const std::string& path);

}  // namespace tia

#endif  // TIA_EXPERIMENT_CONFIG_HPP
