#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// Ratio used in place of +inf when a receiver sees no interference at all.
constexpr double kSirCap = 1e9;

/// Linear received powers (mW) for one UAV position.  Sectors are flattened
/// as mbs_index * 3 + sector_index.
struct LinkReport {
    int n_ue = 0;
    int n_sectors = 0;
    std::vector<double> ue_sector_mw;  // [ue * n_sectors + s]
    std::vector<double> ue_uav_mw;     // [ue]
    std::vector<double> uav_sector_mw; // [s], received at the UAV

    double ue_sector(int ue, int s) const { return ue_sector_mw[std::size_t(ue) * n_sectors + s]; }
};

/// Serving choice per UE and per-transmitter load.  Transmitter ids are
/// sector indices 0..S-1; id S is the UAV.
struct AssociationMap {
    std::vector<int> server;  // per UE
    std::vector<int> load;    // per transmitter, size S+1
    int uav_id = 0;           // == S

    bool served_by_uav(int ue) const { return server[ue] == uav_id; }
};

struct SnapshotMetrics {
    std::vector<double> sir;      // linear, per UE
    std::vector<double> se;       // bps/Hz, per UE
    std::vector<std::uint8_t> outage;
    double sum_rate = 0.0;        // bps/Hz
    double backhaul_sir = 0.0;    // linear; 0 when no UAV in the snapshot
    int backhaul_sector = -1;
};

/// UAV-independent part of the link budget, built once per scenario and then
/// shared read-only across snapshot evaluations.
struct DirectPowerCache {
    int n_ue = 0;
    int n_sectors = 0;
    std::vector<double> ue_sector_mw;   // [ue * n_sectors + s]
    std::vector<double> ue_total_mw;    // [ue], sum over all sectors
    std::vector<double> ue_best_mw;     // [ue]
    std::vector<int> ue_best_sector;    // [ue]
};

DirectPowerCache build_direct_cache(const Scenario& s);

/// Full link budget with the UAV at uav_pos (km).  Passing the scenario's
/// direct cache skips the MBS->UE recomputation.
LinkReport compute_link_powers(const Scenario& s, const Vec3& uav_pos,
                               const DirectPowerCache* cache = nullptr);

/// Serving backhaul sector (argmax received power at the UAV) and its SIR
/// against all other sectors.
std::pair<double, int> backhaul_sir(const LinkReport& report);

/// Amplify-and-forward end-to-end SIR: harmonic mean of the two hops.
double end_to_end_sir(double gamma_backhaul, double gamma_access);

/// Associates every UE with its best candidate (strongest direct sector vs
/// the relay path), recounts loads and scores the snapshot.
std::pair<AssociationMap, SnapshotMetrics> associate_and_score(
    const Scenario& s, const Vec3& uav_pos, const DirectPowerCache* cache = nullptr);

/// Same network with no UAV at all: direct association only.
std::pair<AssociationMap, SnapshotMetrics> score_no_uav(
    const Scenario& s, const DirectPowerCache* cache = nullptr);

/// Outage flag per UE: spectral efficiency below the QoS threshold.
std::vector<std::uint8_t> outage_flags(const SnapshotMetrics& m, double t_c);

}  // namespace skyrelay
