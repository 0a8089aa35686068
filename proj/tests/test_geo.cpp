// SPDX-License-Identifier: Apache-2.0

#include "tia/geo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using tia::DelayMatrix;
using tia::delay_bounds;
using tia::delay_matrix;
using tia::DutyCycle;
using tia::ExperimentConfig;
using tia::ExperimentMode;
using tia::GeoScenario;
using tia::GroundStation;
using tia::run_satellite;
using tia::sample_ground_stations;
using tia::TrialRng;

TEST_CASE("scenario validation") {
    GeoScenario s;
    CHECK_NOTHROW(s.validate());
    s.satellite_longitudes_deg = {25.0, 25.0, 25.5};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = GeoScenario{};
    s.ground_lat_range_deg = {55.0, 55.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = GeoScenario{};
    s.slot_seconds = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = GeoScenario{};
    s.satellite_longitudes_deg = {25.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("station sampling is reproducible and inside the box") {
    const GeoScenario scenario;
    TrialRng a(1, 2);
    TrialRng b(1, 2);
    const auto sa = sample_ground_stations(a, scenario);
    const auto sb = sample_ground_stations(b, scenario);
    REQUIRE(sa.size() == 3);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        CHECK(sa[i].latitude_deg == sb[i].latitude_deg);
        CHECK(sa[i].longitude_deg == sb[i].longitude_deg);
        CHECK(sa[i].latitude_deg >= 35.0);
        CHECK(sa[i].latitude_deg <= 55.0);
        CHECK(sa[i].longitude_deg >= -10.0);
        CHECK(sa[i].longitude_deg <= 20.0);
    }

    // Latitude is drawn before longitude for each station in turn.
    TrialRng replay(1, 2);
    for (const GroundStation& g : sa) {
        CHECK(g.latitude_deg == 35.0 + (55.0 - 35.0) * replay.next_unit());
        CHECK(g.longitude_deg == -10.0 + (20.0 - -10.0) * replay.next_unit());
    }
}

TEST_CASE("station coordinates are uniform over the box") {
    const GeoScenario scenario;
    std::vector<double> lats, lons;
    lats.reserve(100000);
    lons.reserve(100000);
    for (std::uint64_t t = 0; t < 100000; ++t) {
        TrialRng rng(77, t);
        const auto st = sample_ground_stations(rng, scenario);
        lats.push_back(st[0].latitude_deg);
        lons.push_back(st[0].longitude_deg);
    }
    CHECK(oracle::ks_uniform(std::move(lats), 35.0, 55.0) <= 0.01);
    CHECK(oracle::ks_uniform(std::move(lons), -10.0, 20.0) <= 0.01);
}

TEST_CASE("slant delay on fixed geometries") {
    const GeoScenario scenario;

    // Sub-satellite point: the range is the altitude difference.
    const std::vector<GroundStation> sub{{0.0, 25.0}, {0.0, 25.0}, {0.0, 25.0}};
    const DelayMatrix a = delay_matrix(sub, scenario);
    const double direct =
        (scenario.geo_radius_m - scenario.earth_radius_m) / scenario.light_speed_m_s;
    CHECK(a.entry(1, 1) == doctest::Approx(direct).epsilon(1e-15));

    // Mid-box station against the vector-geometry oracle.
    const std::vector<GroundStation> mid{{45.0, 5.0}, {45.0, 5.0}, {45.0, 5.0}};
    const DelayMatrix m = delay_matrix(mid, scenario);
    CHECK(m.entry(0, 1) == doctest::Approx(0.1275166345508065).epsilon(1e-12));
    CHECK(m.entry(0, 1) ==
          doctest::Approx(oracle::ecef_delay(45.0, 5.0, 25.0, scenario.earth_radius_m,
                                             scenario.geo_radius_m, scenario.light_speed_m_s))
              .epsilon(1e-13));

    // Neighbouring satellites half a degree apart differ by well under a
    // millisecond from anywhere in the box.
    CHECK(std::abs(m.entry(0, 0) - m.entry(0, 1)) < 1e-3);
    CHECK(std::abs(m.entry(0, 2) - m.entry(0, 1)) < 1e-3);

    CHECK_THROWS_AS(delay_matrix({{45.0, 5.0}}, scenario), std::invalid_argument);
}

TEST_CASE("slant delay matches the vector oracle on random geometry") {
    const GeoScenario scenario;
    for (std::uint64_t t = 0; t < 200; ++t) {
        TrialRng rng(99, t);
        const auto st = sample_ground_stations(rng, scenario);
        const DelayMatrix a = delay_matrix(st, scenario);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double want = oracle::ecef_delay(
                    st[static_cast<std::size_t>(i)].latitude_deg,
                    st[static_cast<std::size_t>(i)].longitude_deg,
                    scenario.satellite_longitudes_deg[static_cast<std::size_t>(j)],
                    scenario.earth_radius_m, scenario.geo_radius_m, scenario.light_speed_m_s);
                CHECK(a.entry(i, j) == doctest::Approx(want).epsilon(1e-12));
            }
        }
        CHECK(a.in_long_delay_regime());
    }
}

TEST_CASE("delay bounds bracket every sampled delay") {
    const GeoScenario scenario;
    const auto [lo, hi] = delay_bounds(scenario);
    // The slant range grows with |latitude| and with the longitude offset,
    // so the nearest point is the low-latitude edge under the closest
    // satellite (its longitude clamped into the box) and the farthest is the
    // opposite corner under the most distant satellite.
    const double lo_want = oracle::ecef_delay(35.0, 20.0, 24.5, scenario.earth_radius_m,
                                              scenario.geo_radius_m, scenario.light_speed_m_s);
    const double hi_want = oracle::ecef_delay(55.0, -10.0, 25.5, scenario.earth_radius_m,
                                              scenario.geo_radius_m, scenario.light_speed_m_s);
    CHECK(lo == doctest::Approx(lo_want).epsilon(1e-12));
    CHECK(hi == doctest::Approx(hi_want).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.12390).epsilon(1e-4));
    CHECK(hi == doctest::Approx(0.13206).epsilon(1e-4));
    CHECK(lo < hi);

    for (std::uint64_t t = 0; t < 1000; ++t) {
        TrialRng rng(1234, t);
        const auto st = sample_ground_stations(rng, scenario);
        const DelayMatrix a = delay_matrix(st, scenario);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(a.entry(i, j) >= lo - 1e-12);
                CHECK(a.entry(i, j) <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("mirrored longitudes give mirrored delays") {
    GeoScenario mirrored;
    mirrored.satellite_longitudes_deg = {25.5, 25.0, 24.5};
    const GeoScenario scenario;
    for (std::uint64_t t = 0; t < 100; ++t) {
        TrialRng rng(55, t);
        const auto st = sample_ground_stations(rng, scenario);
        std::vector<GroundStation> flipped;
        for (const GroundStation& g : st) {
            flipped.push_back({g.latitude_deg, 50.0 - g.longitude_deg});
        }
        const DelayMatrix a = delay_matrix(st, scenario);
        const DelayMatrix b = delay_matrix(flipped, mirrored);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK(std::abs(a.entry(i, j) - b.entry(i, j)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("normalization of physical delays uses the shared modular map") {
    const GeoScenario scenario;
    TrialRng rng(8, 0);
    const auto st = sample_ground_stations(rng, scenario);
    const DelayMatrix a = delay_matrix(st, scenario);
    const auto b = tia::normalize(a, tia::TransmitDelays::zeros(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(b.entry(i, j) == tia::mod_unit(a.entry(i, j) / scenario.slot_seconds));
            CHECK(b.entry(i, j) >= 0.0);
            CHECK(b.entry(i, j) < 1.0);
        }
    }
}

TEST_CASE("satellite experiment determinism and mode checks") {
    GeoScenario scenario;
    ExperimentConfig cfg;
    cfg.mode = ExperimentMode::satellite;
    cfg.rho = DutyCycle(0.43);
    cfg.trials = 30;
    cfg.seed = 77;
    cfg.workers = 1;
    const auto a = run_satellite(cfg, scenario);
    cfg.workers = 3;
    const auto b = run_satellite(cfg, scenario);
    CHECK(a.values() == b.values());
    for (double v : a.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 3.0 * 0.43);
    }

    cfg.mode = ExperimentMode::coordinated;
    CHECK_THROWS_AS(run_satellite(cfg, scenario), std::invalid_argument);

    cfg.mode = ExperimentMode::satellite;
    scenario.satellite_longitudes_deg = {24.5, 25.0, 25.5, 26.0};
    CHECK_THROWS_AS(run_satellite(cfg, scenario), std::invalid_argument);
}
