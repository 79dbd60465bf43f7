#include "skyrelay/radio.hpp"

#include <algorithm>
#include <cmath>

#include "skyrelay/antenna.hpp"
#include "skyrelay/channel.hpp"

namespace skyrelay {

namespace {

double direct_power_mw(const Mbs& m, int sector, const Ue& u,
                       const OhplmConstants& ohplm) {
    const AntennaConfig ant = AntennaConfig::with_downtilt(m.downtilt_deg);
    const AngleLocal ang =
        local_angles(m.position(), m.sector_bearings_deg[std::size_t(sector)], u.position());
    const double d_km = dist3d_km(m.position(), u.position());
    const double rx_dbm = m.tx_power_dbm + array_gain(ang, ant) - pathloss_mbs_ue(ohplm, d_km);
    return dbm_to_mw(rx_dbm);
}

// SIR against a linear interference sum; a receiver with literally nothing
// interfering gets the finite cap instead of an infinity.
double sir_or_cap(double signal_mw, double interference_mw) {
    if (interference_mw <= 0.0) return kSirCap;
    return signal_mw / interference_mw;
}

void score(const Scenario& s, const std::vector<double>& sir, AssociationMap& assoc,
           SnapshotMetrics& out) {
    const int n_ue = int(s.ue_list.size());
    out.sir = sir;
    out.se.assign(std::size_t(n_ue), 0.0);
    out.sum_rate = 0.0;
    for (int k = 0; k < n_ue; ++k) {
        const int load = assoc.load[std::size_t(assoc.server[std::size_t(k)])];
        out.se[std::size_t(k)] = std::log2(1.0 + sir[std::size_t(k)]) / load;
        out.sum_rate += out.se[std::size_t(k)];
    }
    out.outage = outage_flags(out, s.qos_threshold);
}

}  // namespace

DirectPowerCache build_direct_cache(const Scenario& s) {
    DirectPowerCache c;
    c.n_ue = int(s.ue_list.size());
    c.n_sectors = int(s.mbs_list.size()) * 3;
    c.ue_sector_mw.assign(std::size_t(c.n_ue) * c.n_sectors, 0.0);
    c.ue_total_mw.assign(std::size_t(c.n_ue), 0.0);
    c.ue_best_mw.assign(std::size_t(c.n_ue), 0.0);
    c.ue_best_sector.assign(std::size_t(c.n_ue), -1);

    const OhplmConstants ohplm = ohplm_constants(
        s.carrier_freq_mhz, s.mbs_list.empty() ? 30.0 : s.mbs_list[0].height_m,
        s.ue_list.empty() ? 2.0 : s.ue_list[0].height_m);
    for (int k = 0; k < c.n_ue; ++k) {
        const Ue& u = s.ue_list[std::size_t(k)];
        // Heights may vary per node; recompute the Hata constants only when
        // they differ from the cached pair.
        for (int mi = 0; mi < int(s.mbs_list.size()); ++mi) {
            const Mbs& m = s.mbs_list[std::size_t(mi)];
            const OhplmConstants co =
                (m.height_m == (s.mbs_list[0].height_m) && u.height_m == s.ue_list[0].height_m)
                    ? ohplm
                    : ohplm_constants(s.carrier_freq_mhz, m.height_m, u.height_m);
            for (int sec = 0; sec < 3; ++sec) {
                const double p = direct_power_mw(m, sec, u, co);
                const int sid = mi * 3 + sec;
                c.ue_sector_mw[std::size_t(k) * c.n_sectors + sid] = p;
                c.ue_total_mw[std::size_t(k)] += p;
                if (p > c.ue_best_mw[std::size_t(k)]) {
                    c.ue_best_mw[std::size_t(k)] = p;
                    c.ue_best_sector[std::size_t(k)] = sid;
                }
            }
        }
    }
    return c;
}

LinkReport compute_link_powers(const Scenario& s, const Vec3& uav_pos,
                               const DirectPowerCache* cache) {
    LinkReport r;
    r.n_ue = int(s.ue_list.size());
    r.n_sectors = int(s.mbs_list.size()) * 3;

    DirectPowerCache local;
    if (!cache) {
        local = build_direct_cache(s);
        cache = &local;
    }
    r.ue_sector_mw = cache->ue_sector_mw;

    r.ue_uav_mw.assign(std::size_t(r.n_ue), 0.0);
    const double uav_h_m = uav_pos.z_m();
    for (int k = 0; k < r.n_ue; ++k) {
        const Ue& u = s.ue_list[std::size_t(k)];
        const double d3d = dist3d_m(uav_pos, u.position());
        const double z = dist2d_m(uav_pos, u.position());
        const double rx_dbm = rx_power_uav_ue(s.uav_tx_power_dbm, d3d, z, uav_h_m,
                                              u.height_m, s.mplm_params);
        r.ue_uav_mw[std::size_t(k)] = dbm_to_mw(rx_dbm);
    }

    r.uav_sector_mw.assign(std::size_t(r.n_sectors), 0.0);
    for (int mi = 0; mi < int(s.mbs_list.size()); ++mi) {
        const Mbs& m = s.mbs_list[std::size_t(mi)];
        const AntennaConfig ant = AntennaConfig::with_downtilt(m.downtilt_deg);
        const double d3d = dist3d_m(m.position(), uav_pos);
        const double loss = pathloss_mbs_uav(uav_h_m, d3d, s.carrier_freq_mhz / 1000.0);
        for (int sec = 0; sec < 3; ++sec) {
            const AngleLocal ang =
                local_angles(m.position(), m.sector_bearings_deg[std::size_t(sec)], uav_pos);
            const double rx_dbm = m.tx_power_dbm + array_gain(ang, ant) - loss;
            r.uav_sector_mw[std::size_t(mi * 3 + sec)] = dbm_to_mw(rx_dbm);
        }
    }
    return r;
}

std::pair<double, int> backhaul_sir(const LinkReport& report) {
    int best = 0;
    double total = 0.0;
    for (int sid = 0; sid < report.n_sectors; ++sid) {
        total += report.uav_sector_mw[std::size_t(sid)];
        if (report.uav_sector_mw[std::size_t(sid)] >
            report.uav_sector_mw[std::size_t(best)])
            best = sid;
    }
    const double signal = report.uav_sector_mw[std::size_t(best)];
    return {sir_or_cap(signal, total - signal), best};
}

double end_to_end_sir(double gamma_backhaul, double gamma_access) {
    const double sum = gamma_backhaul + gamma_access;
    if (sum <= 0.0) return 0.0;
    return 2.0 * gamma_backhaul * gamma_access / sum;
}

std::pair<AssociationMap, SnapshotMetrics> associate_and_score(
    const Scenario& s, const Vec3& uav_pos, const DirectPowerCache* cache) {
    DirectPowerCache local;
    if (!cache) {
        local = build_direct_cache(s);
        cache = &local;
    }
    const LinkReport report = compute_link_powers(s, uav_pos, cache);
    const int n_ue = report.n_ue;
    const int n_sectors = report.n_sectors;

    SnapshotMetrics metrics;
    const auto [bh_sir, bh_sector] = backhaul_sir(report);
    metrics.backhaul_sir = bh_sir;
    metrics.backhaul_sector = bh_sector;

    AssociationMap assoc;
    assoc.uav_id = n_sectors;
    assoc.server.assign(std::size_t(n_ue), 0);
    assoc.load.assign(std::size_t(n_sectors) + 1, 0);

    std::vector<double> sir(std::size_t(n_ue), 0.0);
    for (int k = 0; k < n_ue; ++k) {
        // Direct candidate: strongest sector against everything else the UE
        // hears, the UAV included.
        const double best_mw = cache->ue_best_mw[std::size_t(k)];
        const double uav_mw = report.ue_uav_mw[std::size_t(k)];
        const double direct =
            sir_or_cap(best_mw, cache->ue_total_mw[std::size_t(k)] - best_mw + uav_mw);
        // Relay candidate: UAV signal against every sector, throttled by the
        // backhaul hop.
        const double access = sir_or_cap(uav_mw, cache->ue_total_mw[std::size_t(k)]);
        const double relay = end_to_end_sir(bh_sir, access);
        if (relay > direct) {
            assoc.server[std::size_t(k)] = assoc.uav_id;
            sir[std::size_t(k)] = relay;
        } else {
            assoc.server[std::size_t(k)] = cache->ue_best_sector[std::size_t(k)];
            sir[std::size_t(k)] = direct;
        }
        ++assoc.load[std::size_t(assoc.server[std::size_t(k)])];
    }

    score(s, sir, assoc, metrics);
    return {assoc, metrics};
}

std::pair<AssociationMap, SnapshotMetrics> score_no_uav(const Scenario& s,
                                                        const DirectPowerCache* cache) {
    DirectPowerCache local;
    if (!cache) {
        local = build_direct_cache(s);
        cache = &local;
    }
    const int n_ue = cache->n_ue;

    AssociationMap assoc;
    assoc.uav_id = cache->n_sectors;
    assoc.server.assign(std::size_t(n_ue), 0);
    assoc.load.assign(std::size_t(cache->n_sectors) + 1, 0);

    std::vector<double> sir(std::size_t(n_ue), 0.0);
    for (int k = 0; k < n_ue; ++k) {
        const double best_mw = cache->ue_best_mw[std::size_t(k)];
        sir[std::size_t(k)] = sir_or_cap(best_mw, cache->ue_total_mw[std::size_t(k)] - best_mw);
        assoc.server[std::size_t(k)] = cache->ue_best_sector[std::size_t(k)];
        ++assoc.load[std::size_t(assoc.server[std::size_t(k)])];
    }

    SnapshotMetrics metrics;  // no UAV: backhaul_sir stays 0, sector -1
    score(s, sir, assoc, metrics);
    return {assoc, metrics};
}

std::vector<std::uint8_t> outage_flags(const SnapshotMetrics& m, double t_c) {
    std::vector<std::uint8_t> flags(m.se.size(), 0);
    for (std::size_t k = 0; k < m.se.size(); ++k) flags[k] = m.se[k] < t_c ? 1 : 0;
    return flags;
}

}  // namespace skyrelay
