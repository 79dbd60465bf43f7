#include "skyrelay/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skyrelay/geometry.hpp"

namespace skyrelay {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::domain_error(what); }

}  // namespace

OhplmConstants ohplm_constants(double f_c_mhz, double h_bs_m, double h_ue_m) {
    if (!(f_c_mhz >= kOhplmFreqMinMhz && f_c_mhz <= kOhplmFreqMaxMhz))
        reject("ohplm: carrier frequency " + std::to_string(f_c_mhz) +
               " MHz outside [150, 1500]");
    if (!(h_bs_m >= kOhplmBsMinM && h_bs_m <= kOhplmBsMaxM))
        reject("ohplm: base-station height " + std::to_string(h_bs_m) +
               " m outside [30, 200]");
    if (!(h_ue_m >= kOhplmUeMinM && h_ue_m <= kOhplmUeMaxM))
        reject("ohplm: UE height " + std::to_string(h_ue_m) + " m outside [1, 10]");

    OhplmConstants c;
    const double lf = std::log10(f_c_mhz);
    c.a_hue = (1.1 * lf - 0.7) * h_ue_m - 1.56 * lf - 0.8;
    c.A = 69.55 + 26.16 * lf - 13.82 * std::log10(h_bs_m) - c.a_hue;
    c.B = 44.9 - 6.55 * std::log10(h_bs_m);
    const double l28 = std::log10(f_c_mhz / 28.0);
    c.C = -2.0 * l28 * l28 - 5.4;  // suburban correction
    return c;
}

double pathloss_mbs_ue(const OhplmConstants& c, double d_km) {
    if (!(d_km > 0.0)) reject("ohplm: nonpositive distance");
    return c.A + c.B * std::log10(d_km) + c.C;
}

double los_probability(double z_m, double h_uav_m, double h_ue_m, const MplmParams& p) {
    const int m = int(std::floor(z_m * std::sqrt(p.a_hat * p.b_hat) / 1000.0 - 1.0));
    if (m < 0) return 1.0;  // empty product
    const double dh = h_uav_m - h_ue_m;
    const double two_c2 = 2.0 * p.c_hat * p.c_hat;
    double tau = 1.0;
    for (int n = 0; n <= m; ++n) {
        double f;
        if (p.los_variant == LosVariant::kLiteral) {
            // Clearance enters unsquared and uninterpolated; a factor can go
            // negative once (n+0.5)*dh exceeds the UAV height, so floor it to
            // keep the product a probability.
            f = 1.0 - std::exp(-(h_uav_m - (n + 0.5) * dh) / two_c2);
            f = std::max(f, 0.0);
        } else {
            const double clear = h_uav_m - (n + 0.5) * dh / (m + 1);
            f = 1.0 - std::exp(-(clear * clear) / two_c2);
        }
        tau *= f;
    }
    return tau;
}

double rx_power_uav_ue(double p_uav_dbm, double d3d_m, double z_m, double h_uav_m,
                       double h_ue_m, const MplmParams& p) {
    if (!(d3d_m > 0.0)) reject("mplm: nonpositive distance");
    const double tau = los_probability(z_m, h_uav_m, h_ue_m, p);
    const double p_mw = std::pow(10.0, p_uav_dbm / 10.0);
    const double mix = std::pow(d3d_m, -p.alpha_los) * tau +
                       std::pow(d3d_m, -p.alpha_nlos) * (1.0 - tau);
    return 10.0 * std::log10(p_mw * mix);
}

double pathloss_mbs_uav(double h_uav_m, double d3d_m, double f_c_ghz) {
    if (!(h_uav_m >= kRmaAvMinM && h_uav_m <= kRmaAvMaxM))
        reject("rma-av: UAV height " + std::to_string(h_uav_m) + " m outside [10, 300]");
    if (!(d3d_m > 0.0)) reject("rma-av: nonpositive distance");
    const double slope = std::max(23.9 - 1.8 * std::log10(h_uav_m), 20.0);
    return slope * std::log10(d3d_m) + 20.0 * std::log10(40.0 * kPi * f_c_ghz / 3.0);
}

}  // namespace skyrelay
