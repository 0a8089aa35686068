// SPDX-License-Identifier: Apache-2.0
//
// Geostationary-satellite scenario: random ground stations in a lat/lon box,
// physical delay matrices from slant ranges, and the end-to-end experiment.

#ifndef TIA_GEO_HPP
#define TIA_GEO_HPP

#include <utility>
#include <vector>

#include "tia/dof.hpp"
#include "tia/mc.hpp"
#include "tia/rng.hpp"

namespace tia {

struct GroundStation {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
};

/// Scenario geometry. Ground station i is served by satellite i (the index
/// pairing is fixed; stations are i.i.d., so the choice does not matter).
/// Satellites sit on the equatorial plane at geostationary radius; the Earth
/// is a sphere.
struct GeoScenario {
    std::vector<double> satellite_longitudes_deg = {24.5, 25.0, 25.5};
    std::pair<double, double> ground_lat_range_deg = {35.0, 55.0};
    std::pair<double, double> ground_lon_range_deg = {-10.0, 20.0};
    double slot_seconds = 25e-6;

    double geo_radius_m = 42164169.0;
    double earth_radius_m = 6371000.0;
    double light_speed_m_s = 299792458.0;

    /// Throws std::invalid_argument unless longitudes are distinct, the box
    /// is non-degenerate and all physical quantities are positive.
    void validate() const;
};

/// One station per satellite, latitude then longitude uniform over the box.
std::vector<GroundStation> sample_ground_stations(TrialRng& rng, const GeoScenario& scenario);

/// a_{i,j} = slant range from station i to satellite j divided by light
/// speed; range via the law of cosines between a point at Earth radius and
/// one on the equatorial geostationary circle.
DelayMatrix delay_matrix(const std::vector<GroundStation>& stations, const GeoScenario& scenario);

/// Smallest and largest slant delay attainable inside the ground box over
/// all satellites. The slant range is monotone in |latitude| and in the
/// longitude offset, so the extremes sit at clamped/corner positions.
std::pair<double, double> delay_bounds(const GeoScenario& scenario);

/// Per trial: sample stations, build A, normalize B = (A mod T)/T, optimize
/// the transmit delays and record the achieved phi.
EmpiricalDistribution run_satellite(const ExperimentConfig& config, const GeoScenario& scenario);

}  // namespace tia

#endif  // TIA_GEO_HPP
