#include "skyrelay/scenario.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace skyrelay {

namespace {

// 53-bit uniform in [0, 1).  Pinned here (rather than using
// std::uniform_real_distribution, whose output is implementation-defined) so
// a seed reproduces the same scenario on any platform.
double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

double t_min(const Vec3& start_km, const Vec3& finish_km, double v_max_mps) {
    if (!(v_max_mps > 0.0)) fail("t_min: v_max must be positive");
    return dist3d_m(start_km, finish_km) / v_max_mps;
}

Scenario generate_scenario(const Rect& area, double lambda_mbs_per_km2,
                           double lambda_ue_per_km2, const Mission& mission,
                           std::uint64_t seed, const GenOptions& opt) {
    if (area.empty()) fail("generate_scenario: empty area");
    if (!(lambda_mbs_per_km2 > 0.0 && lambda_ue_per_km2 > 0.0))
        fail("generate_scenario: densities must be positive");

    const long n_mbs = std::lround(lambda_mbs_per_km2 * area.area_km2());
    const long n_ue = std::lround(lambda_ue_per_km2 * area.area_km2());
    if (n_mbs < 1) fail("generate_scenario: density yields zero MBSs");

    Scenario s;
    s.area = area;
    s.flight_area = area.expanded(opt.flight_margin_km);
    s.mission = mission;
    s.uav_tx_power_dbm = opt.uav_tx_power_dbm;
    s.carrier_freq_mhz = opt.carrier_freq_mhz;
    s.mplm_params = opt.mplm_params;
    s.qos_threshold = opt.qos_threshold;
    s.rng_seed = seed;

    std::mt19937_64 rng(seed);
    s.mbs_list.reserve(std::size_t(n_mbs));
    for (long i = 0; i < n_mbs; ++i) {
        Mbs m;
        m.x_km = area.x0 + uniform01(rng) * area.width();
        m.y_km = area.y0 + uniform01(rng) * area.height();
        m.height_m = opt.mbs_height_m;
        m.tx_power_dbm = opt.mbs_tx_power_dbm;
        m.downtilt_deg = opt.downtilt_deg;
        s.mbs_list.push_back(m);
    }
    s.ue_list.reserve(std::size_t(n_ue));
    for (long i = 0; i < n_ue; ++i) {
        Ue u;
        u.x_km = area.x0 + uniform01(rng) * area.width();
        u.y_km = area.y0 + uniform01(rng) * area.height();
        u.height_m = opt.ue_height_m;
        s.ue_list.push_back(u);
    }

    validate(s);
    return s;
}

void validate(const Scenario& s) {
    if (s.area.empty()) fail("scenario: empty network area");
    if (s.flight_area.empty()) fail("scenario: empty flight area");
    if (!(s.carrier_freq_mhz >= kOhplmFreqMinMhz && s.carrier_freq_mhz <= kOhplmFreqMaxMhz))
        fail("scenario: carrier_freq_mhz outside [150, 1500]");
    if (s.mbs_list.empty()) fail("scenario: at least one MBS required");
    if (!(s.mplm_params.alpha_los > 0 && s.mplm_params.alpha_nlos > 0 &&
          s.mplm_params.a_hat > 0 && s.mplm_params.b_hat > 0 && s.mplm_params.c_hat > 0))
        fail("scenario: mplm parameters must be positive");
    if (!(s.qos_threshold >= 0)) fail("scenario: qos_threshold must be nonnegative");

    for (std::size_t i = 0; i < s.mbs_list.size(); ++i) {
        const Mbs& m = s.mbs_list[i];
        const std::string tag = "mbs[" + std::to_string(i) + "]: ";
        if (!s.area.contains(m.x_km, m.y_km)) fail(tag + "outside network area");
        if (!(m.height_m >= kOhplmBsMinM && m.height_m <= kOhplmBsMaxM))
            fail(tag + "height outside [30, 200] m");
        // Three sectors, pairwise 120 degrees apart in some rotation.
        double b0 = std::fmod(std::fmod(m.sector_bearings_deg[0], 360.0) + 360.0, 360.0);
        double b1 = std::fmod(std::fmod(m.sector_bearings_deg[1], 360.0) + 360.0, 360.0);
        double b2 = std::fmod(std::fmod(m.sector_bearings_deg[2], 360.0) + 360.0, 360.0);
        if (b1 < b0) std::swap(b0, b1);
        if (b2 < b1) std::swap(b1, b2);
        if (b1 < b0) std::swap(b0, b1);
        const double tol = 1e-9;
        if (std::fabs((b1 - b0) - 120.0) > tol || std::fabs((b2 - b1) - 120.0) > tol)
            fail(tag + "sector bearings must be pairwise separated by 120 degrees");
    }
    for (std::size_t i = 0; i < s.ue_list.size(); ++i) {
        const Ue& u = s.ue_list[i];
        const std::string tag = "ue[" + std::to_string(i) + "]: ";
        if (!s.area.contains(u.x_km, u.y_km)) fail(tag + "outside network area");
        if (!(u.height_m >= kOhplmUeMinM && u.height_m <= kOhplmUeMaxM))
            fail(tag + "height outside [1, 10] m");
    }

    const Mission& mi = s.mission;
    if (!(mi.v_max_mps > 0.0)) fail("mission: v_max must be positive");
    if (!(mi.h_min_m <= mi.h_max_m)) fail("mission: h_min above h_max");
    if (!(mi.h_min_m >= 40.0))
        fail("mission: h_min below 40 m (LoS backhaul model floor)");
    if (!(mi.h_max_m <= kRmaAvMaxM)) fail("mission: h_max above 300 m");
    for (const Vec3* p : {&mi.start, &mi.finish}) {
        const bool is_start = p == &mi.start;
        const std::string tag = is_start ? "mission start: " : "mission finish: ";
        if (!s.flight_area.contains(p->x, p->y)) fail(tag + "outside flight area");
        if (!(p->z_m() >= mi.h_min_m && p->z_m() <= mi.h_max_m))
            fail(tag + "height outside [h_min, h_max]");
    }
    const double tmin = t_min(mi.start, mi.finish, mi.v_max_mps);
    if (mi.duration_s < tmin)
        throw InfeasibleMission("mission: duration " + std::to_string(mi.duration_s) +
                                " s is below the minimum flight time t_min = " +
                                std::to_string(tmin) + " s");
}

}  // namespace skyrelay
