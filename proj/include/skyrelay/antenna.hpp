#pragma once

#include "skyrelay/geometry.hpp"

namespace skyrelay {

/// Sectorized base-station antenna: a vertical ULA of identical elements with
/// an electrically steered mainlobe.  Angles in degrees, gains in dB(i).
struct AntennaConfig {
    int n_elements = 8;
    double g_max_dbi = 8.0;
    double phi_3db_deg = 65.0;
    double theta_3db_deg = 65.0;
    double a_m_db = 30.0;    // front-back ratio
    double sla_v_db = 30.0;  // side-lobe level limit
    double element_spacing_v = 0.5;    // vertical spacing in wavelengths
    double steering_theta_deg = 96.0;  // zenith steering angle, 90 + downtilt
    double rho = 1.0;                  // correlation coefficient

    static AntennaConfig with_downtilt(double downtilt_deg) {
        AntennaConfig c;
        c.steering_theta_deg = 90.0 + downtilt_deg;
        return c;
    }
};

/// Direction in the pattern frame of one sector.  theta_prime is the zenith
/// angle in [0, 180] (0 = straight up, 90 = horizon); phi_prime is the
/// azimuth offset from the sector boresight, wrapped to (-180, 180].
struct AngleLocal {
    double theta_prime_deg = 90.0;
    double phi_prime_deg = 0.0;
};

/// Horizontal element pattern, dB in [-a_m, 0].
double element_gain_h(double phi_prime_deg, const AntennaConfig& c);

/// Vertical element pattern, dB in [-sla_v, 0], peaking at the horizon.
double element_gain_v(double theta_prime_deg, const AntennaConfig& c);

/// Combined 3D element gain in dBi, in [g_max - a_m, g_max].
double element_gain(double theta_prime_deg, double phi_prime_deg, const AntennaConfig& c);

/// Array factor in dB for the vertical ULA.  Depends only on the zenith
/// angle; peaks at 10*log10(n) when theta_prime equals the steering angle,
/// and is exactly 0 for a single element.
double array_factor(double theta_prime_deg, const AntennaConfig& c);

/// Total array radiation gain: element gain plus array factor, dBi.
double array_gain(double theta_prime_deg, double phi_prime_deg, const AntennaConfig& c);

inline double array_gain(const AngleLocal& a, const AntennaConfig& c) {
    return array_gain(a.theta_prime_deg, a.phi_prime_deg, c);
}

/// Maps a transmitter->receiver ray into the pattern frame of a sector whose
/// boresight bearing is measured counterclockwise from +x, in degrees.
/// Throws std::invalid_argument for coincident positions.
AngleLocal local_angles(const Vec3& tx_km, double sector_bearing_deg, const Vec3& rx_km);

}  // namespace skyrelay
