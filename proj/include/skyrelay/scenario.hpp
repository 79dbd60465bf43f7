#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "skyrelay/channel.hpp"
#include "skyrelay/geometry.hpp"

namespace skyrelay {

/// No trajectory can satisfy the endpoint/time constraints.  Raised by
/// scenario validation (duration below the minimum flight time) and by the
/// planner (no finite-value path within the horizon).
struct InfeasibleMission : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Start/finish points (km), time budget and the kinematic envelope.
struct Mission {
    Vec3 start;
    Vec3 finish;
    double duration_s = 240.0;
    double v_max_mps = 18.75;
    double h_min_m = 40.0;
    double h_max_m = 120.0;
};

/// Macrocell base station: three 120-degree sectors on one mast.
struct Mbs {
    double x_km = 0.0;
    double y_km = 0.0;
    double height_m = 30.0;
    double tx_power_dbm = 46.0;
    std::array<double, 3> sector_bearings_deg = {0.0, 120.0, 240.0};
    double downtilt_deg = 6.0;

    Vec3 position() const { return {x_km, y_km, height_m / 1000.0}; }
};

/// Static ground user.
struct Ue {
    double x_km = 0.0;
    double y_km = 0.0;
    double height_m = 2.0;

    Vec3 position() const { return {x_km, y_km, height_m / 1000.0}; }
};

/// Immutable world description.  Validated at construction; downstream link
/// evaluations can assume every model precondition (height and frequency
/// windows) already holds.
struct Scenario {
    Rect area;         // network area holding MBSs and UEs, km
    Rect flight_area;  // where the UAV may fly, km
    std::vector<Mbs> mbs_list;
    std::vector<Ue> ue_list;
    Mission mission;
    double uav_tx_power_dbm = 30.0;
    double carrier_freq_mhz = 1500.0;
    MplmParams mplm_params;
    double qos_threshold = 0.05;  // bps/Hz
    std::uint64_t rng_seed = 0;
};

/// Minimum mission time: straight 3D run at full speed.
double t_min(const Vec3& start_km, const Vec3& finish_km, double v_max_mps);

/// Generator knobs that studies keep fixed.
struct GenOptions {
    double flight_margin_km = 0.1;  // flight area = network area grown by this
    double mbs_height_m = 30.0;
    double ue_height_m = 2.0;
    double mbs_tx_power_dbm = 46.0;
    double uav_tx_power_dbm = 30.0;
    double downtilt_deg = 6.0;
    double carrier_freq_mhz = 1500.0;
    double qos_threshold = 0.05;
    MplmParams mplm_params;
};

/// Draws round(lambda * area) MBSs and UEs i.i.d. uniform over the area.
/// Identical inputs and seed give a bitwise-identical scenario.
Scenario generate_scenario(const Rect& area, double lambda_mbs_per_km2,
                           double lambda_ue_per_km2, const Mission& mission,
                           std::uint64_t seed, const GenOptions& opt = {});

/// Checks every scenario invariant; throws std::invalid_argument with a
/// description of the first violation.
void validate(const Scenario& s);

}  // namespace skyrelay
