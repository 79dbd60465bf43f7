#pragma once

#include <string>

namespace skyrelay {

/// Okumura-Hata suburban coefficients.  Fixed once carrier frequency and
/// antenna heights are fixed; path loss is then A + B*log10(d_km) + C.
struct OhplmConstants {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double a_hue = 0.0;  // UE antenna height correction, dB
};

/// Which form of the building-grid LoS product to evaluate.
///
/// kLiteral follows the printed formula term by term (no square on the
/// clearance, no 1/(m+1) interpolation).  Each factor is floored at zero so
/// the product stays a probability.  kStandard is the usual building-grid
/// model with squared clearance interpolated along the ray.
enum class LosVariant { kLiteral, kStandard };

/// Mixture LoS/NLoS propagation parameters for the UAV-to-UE link.
/// Defaults describe a suburban building grid.
struct MplmParams {
    double alpha_los = 2.09;
    double alpha_nlos = 3.75;
    double a_hat = 0.1;    // built-up area fraction
    double b_hat = 100.0;  // buildings per km^2
    double c_hat = 10.0;   // Rayleigh height parameter, m
    LosVariant los_variant = LosVariant::kLiteral;
};

/// Okumura-Hata validity windows.  Inputs outside are rejected, not clamped.
constexpr double kOhplmFreqMinMhz = 150.0;
constexpr double kOhplmFreqMaxMhz = 1500.0;
constexpr double kOhplmBsMinM = 30.0;
constexpr double kOhplmBsMaxM = 200.0;
constexpr double kOhplmUeMinM = 1.0;
constexpr double kOhplmUeMaxM = 10.0;

/// RMa-AV height window (LoS probability is one from 40 m up).
constexpr double kRmaAvMinM = 10.0;
constexpr double kRmaAvMaxM = 300.0;

/// Suburban Okumura-Hata coefficients.  Throws std::domain_error outside the
/// model's validity windows.
OhplmConstants ohplm_constants(double f_c_mhz, double h_bs_m, double h_ue_m);

/// MBS-to-UE path loss in dB at 3D distance d_km (kilometers, > 0).
double pathloss_mbs_ue(const OhplmConstants& c, double d_km);

/// Building-grid LoS probability for horizontal distance z_m between UAV and
/// UE.  z_m = 0 gives exactly 1 (empty product).
double los_probability(double z_m, double h_uav_m, double h_ue_m, const MplmParams& p);

/// Received power (dBm) at a UE from the UAV: the LoS/NLoS mixture of two
/// power laws applied to the UAV transmit power in the linear domain.
/// d3d_m is the 3D distance in meters (> 0), z_m the horizontal distance.
double rx_power_uav_ue(double p_uav_dbm, double d3d_m, double z_m, double h_uav_m,
                       double h_ue_m, const MplmParams& p);

/// RMa-AV LoS path loss (dB) for an MBS-to-UAV link.  d3d_m in meters,
/// f_c_ghz in GHz.  Throws std::domain_error if h_uav_m is outside [10, 300].
double pathloss_mbs_uav(double h_uav_m, double d3d_m, double f_c_ghz);

}  // namespace skyrelay
