// SPDX-License-Identifier: Apache-2.0

#include "tia/geo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tia/align.hpp"

namespace tia {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double slant_delay(const GroundStation& station, double satellite_lon_deg,
                   const GeoScenario& scenario) {
    const double lat = station.latitude_deg * kDegToRad;
    const double dlon = (station.longitude_deg - satellite_lon_deg) * kDegToRad;
    const double re = scenario.earth_radius_m;
    const double rg = scenario.geo_radius_m;
    const double d2 = re * re + rg * rg - 2.0 * re * rg * std::cos(lat) * std::cos(dlon);
    return std::sqrt(d2) / scenario.light_speed_m_s;
}

}  // namespace

void GeoScenario::validate() const {
    if (satellite_longitudes_deg.size() < 2) {
        throw std::invalid_argument("GeoScenario: need at least 2 satellites");
    }
    for (std::size_t i = 0; i < satellite_longitudes_deg.size(); ++i) {
        for (std::size_t j = i + 1; j < satellite_longitudes_deg.size(); ++j) {
            if (satellite_longitudes_deg[i] == satellite_longitudes_deg[j]) {
                throw std::invalid_argument("GeoScenario: satellite longitudes must be distinct");
            }
        }
    }
    if (!(ground_lat_range_deg.first < ground_lat_range_deg.second) ||
        !(ground_lon_range_deg.first < ground_lon_range_deg.second)) {
        throw std::invalid_argument("GeoScenario: ground box is degenerate");
    }
    if (!(slot_seconds > 0.0)) {
        throw std::invalid_argument("GeoScenario: slot must be positive");
    }
    if (!(geo_radius_m > earth_radius_m) || !(earth_radius_m > 0.0) || !(light_speed_m_s > 0.0)) {
        throw std::invalid_argument("GeoScenario: bad physical constants");
    }
}

std::vector<GroundStation> sample_ground_stations(TrialRng& rng, const GeoScenario& scenario) {
    const auto& lat = scenario.ground_lat_range_deg;
    const auto& lon = scenario.ground_lon_range_deg;
    std::vector<GroundStation> stations;
    stations.reserve(scenario.satellite_longitudes_deg.size());
    for (std::size_t i = 0; i < scenario.satellite_longitudes_deg.size(); ++i) {
        GroundStation s;
        s.latitude_deg = lat.first + (lat.second - lat.first) * rng.next_unit();
        s.longitude_deg = lon.first + (lon.second - lon.first) * rng.next_unit();
        stations.push_back(s);
    }
    return stations;
}

DelayMatrix delay_matrix(const std::vector<GroundStation>& stations, const GeoScenario& scenario) {
    const std::size_t k = scenario.satellite_longitudes_deg.size();
    if (stations.size() != k) {
        throw std::invalid_argument("delay_matrix: station count != satellite count");
    }
    std::vector<double> entries(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            entries[i * k + j] =
                slant_delay(stations[i], scenario.satellite_longitudes_deg[j], scenario);
        }
    }
    return DelayMatrix(std::move(entries), static_cast<int>(k), scenario.slot_seconds);
}

std::pair<double, double> delay_bounds(const GeoScenario& scenario) {
    scenario.validate();
    const auto& lat = scenario.ground_lat_range_deg;
    const auto& lon = scenario.ground_lon_range_deg;
    const double lat_near = std::clamp(0.0, lat.first, lat.second);
    const double lat_far =
        std::abs(lat.first) > std::abs(lat.second) ? lat.first : lat.second;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double sat : scenario.satellite_longitudes_deg) {
        const double lon_near = std::clamp(sat, lon.first, lon.second);
        const double lon_far =
            std::abs(lon.first - sat) > std::abs(lon.second - sat) ? lon.first : lon.second;
        lo = std::min(lo, slant_delay({lat_near, lon_near}, sat, scenario));
        hi = std::max(hi, slant_delay({lat_far, lon_far}, sat, scenario));
    }
    return {lo, hi};
}

EmpiricalDistribution run_satellite(const ExperimentConfig& config, const GeoScenario& scenario) {
    config.validate();
    scenario.validate();
    if (config.mode != ExperimentMode::satellite) {
        throw std::invalid_argument("run_satellite: config mode mismatch");
    }
    if (scenario.satellite_longitudes_deg.size() != 3) {
        throw std::invalid_argument("run_satellite: needs exactly 3 satellites");
    }
    const DutyCycle rho = config.rho;
    const OptimizerSettings settings = config.optimizer;
    const TransmitDelays zero = TransmitDelays::zeros(3);
    auto phis = detail::run_trials(
        config.trials, config.seed, config.workers,
        [&](std::uint64_t, TrialRng& rng) {
            const auto stations = sample_ground_stations(rng, scenario);
            const DelayMatrix a = delay_matrix(stations, scenario);
            const NormalizedDelayMatrix b = normalize(a, zero);
            return optimize_delays(b, rho, settings).dof.sum;
        });
    return EmpiricalDistribution(std::move(phis));
}

}  // namespace tia
