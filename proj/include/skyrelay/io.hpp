#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skyrelay/experiments.hpp"
#include "skyrelay/planner.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// Formats with nine significant digits, '.' decimal separator, locale-free.
std::string format_g9(double v);

/// Scenario <-> JSON.  Parsing rejects unknown keys at every nesting level
/// and type mismatches with std::invalid_argument naming the offending key.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// Dotted-path override ("mission.duration_s=320", "uav_tx_power_dbm=27").
/// Throws std::invalid_argument on unknown paths or unparsable values.
void apply_override(Scenario& s, const std::string& assignment);

struct SnapshotReport {
    Vec3 uav_pos;
    AssociationMap assoc;
    SnapshotMetrics with_uav;
    SnapshotMetrics without_uav;
};
std::string snapshot_to_json(const Scenario& s, const SnapshotReport& r);

/// Trajectory CSV: one row per waypoint
/// step,t_seconds,x_km,y_km,z_m,sum_rate,backhaul_sir_db
std::string trajectory_to_csv(const Trajectory& t);
std::string trajectory_to_json(const Scenario& s, const Trajectory& t,
                               const Grid* grid = nullptr, double wall_time_s = 0.0);

std::string study_to_csv(const StudyResult& r);
std::string study_spec_to_json(const StudySpec& spec);
StudySpec study_spec_from_json(const std::string& text);

std::string runtime_scaling_to_csv(const RuntimeScalingResult& r);

/// FNV-1a 64-bit over raw bytes; stable across runs and platforms.
std::uint64_t fnv1a64(const std::string& text);

/// fnv1a64 over the canonical scenario JSON.
std::uint64_t config_hash(const Scenario& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace skyrelay
