#include "skyrelay/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace skyrelay {

double element_gain_h(double phi_prime_deg, const AntennaConfig& c) {
    const double r = phi_prime_deg / c.phi_3db_deg;
    return -std::min(12.0 * r * r, c.a_m_db);
}

double element_gain_v(double theta_prime_deg, const AntennaConfig& c) {
    const double r = (theta_prime_deg - 90.0) / c.theta_3db_deg;
    return -std::min(12.0 * r * r, c.sla_v_db);
}

double element_gain(double theta_prime_deg, double phi_prime_deg, const AntennaConfig& c) {
    const double combined =
        -(element_gain_h(phi_prime_deg, c) + element_gain_v(theta_prime_deg, c));
    return c.g_max_dbi - std::min(combined, c.a_m_db);
}

double array_factor(double theta_prime_deg, const AntennaConfig& c) {
    const int n = c.n_elements;
    if (n <= 1) return 0.0;
    // Vertical ULA: per-element phase 2*pi*(p-1)*spacing*(cos(theta')-cos(theta_s)).
    const double psi = std::cos(deg2rad(theta_prime_deg)) - std::cos(deg2rad(c.steering_theta_deg));
    std::complex<double> acc(0.0, 0.0);
    for (int p = 0; p < n; ++p) {
        const double phase = 2.0 * kPi * p * c.element_spacing_v * psi;
        acc += std::complex<double>(std::cos(phase), std::sin(phase));
    }
    const double aw2 = std::norm(acc) / n;  // |a . w^T|^2 with a = 1/sqrt(n)
    return 10.0 * std::log10(1.0 + c.rho * (aw2 - 1.0));
}

double array_gain(double theta_prime_deg, double phi_prime_deg, const AntennaConfig& c) {
    return element_gain(theta_prime_deg, phi_prime_deg, c) + array_factor(theta_prime_deg, c);
}

AngleLocal local_angles(const Vec3& tx_km, double sector_bearing_deg, const Vec3& rx_km) {
    const Vec3 d = rx_km - tx_km;
    const double horiz_km = std::sqrt(d.x * d.x + d.y * d.y);
    if (horiz_km == 0.0 && d.z == 0.0)
        throw std::invalid_argument("local_angles: coincident positions");
    AngleLocal a;
    // Zenith angle: 0 straight up, 90 horizon, 180 straight down.
    a.theta_prime_deg = rad2deg(std::atan2(horiz_km, d.z));
    a.phi_prime_deg = horiz_km == 0.0
                          ? 0.0
                          : wrap_deg(rad2deg(std::atan2(d.y, d.x)) - sector_bearing_deg);
    return a;
}

}  // namespace skyrelay
