#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "skyrelay/channel.hpp"

using namespace skyrelay;

// Golden values below were produced by an independent high-precision
// evaluation of the same closed forms and frozen at 17 significant digits.

TEST_CASE("okumura-hata constants at 1500 MHz / 30 m / 2 m") {
    const OhplmConstants c = ohplm_constants(1500.0, 30.0, 2.0);
    CHECK(c.a_hue == doctest::Approx(-0.16730159420436401).epsilon(1e-13));
    CHECK(c.A == doctest::Approx(132.39003319087525).epsilon(1e-13));
    CHECK(c.B == doctest::Approx(35.224855781586211).epsilon(1e-13));
    CHECK(c.C == doctest::Approx(-11.37842021178338).epsilon(1e-13));
}

TEST_CASE("okumura-hata path loss curve") {
    const OhplmConstants c = ohplm_constants(1500.0, 30.0, 2.0);
    CHECK(pathloss_mbs_ue(c, 1.0) == doctest::Approx(121.01161297909187).epsilon(1e-13));
    CHECK(pathloss_mbs_ue(c, 2.0) == doctest::Approx(131.61535116228713).epsilon(1e-13));
    CHECK(pathloss_mbs_ue(c, 0.5) < pathloss_mbs_ue(c, 1.0));
    CHECK(pathloss_mbs_ue(c, 1.0) < pathloss_mbs_ue(c, 1.5));
    CHECK(pathloss_mbs_ue(c, 1.5) < pathloss_mbs_ue(c, 2.0));
}

TEST_CASE("okumura-hata rejects inputs outside the validity windows") {
    CHECK_THROWS_AS(ohplm_constants(149.9, 30.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(ohplm_constants(1500.1, 30.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(ohplm_constants(1500.0, 29.9, 2.0), std::domain_error);
    CHECK_THROWS_AS(ohplm_constants(1500.0, 200.1, 2.0), std::domain_error);
    CHECK_THROWS_AS(ohplm_constants(1500.0, 30.0, 0.99), std::domain_error);
    CHECK_THROWS_AS(ohplm_constants(1500.0, 30.0, 10.01), std::domain_error);
    CHECK_NOTHROW(ohplm_constants(150.0, 30.0, 1.0));
    CHECK_NOTHROW(ohplm_constants(1500.0, 200.0, 10.0));
}

TEST_CASE("rma-av path loss for the backhaul link") {
    CHECK(pathloss_mbs_uav(40.0, 1000.0, 1.5) ==
          doctest::Approx(99.012473413991304).epsilon(1e-13));
    CHECK(pathloss_mbs_uav(120.0, 1000.0, 1.5) ==
          doctest::Approx(96.436018638505127).epsilon(1e-13));
    // Above ~146.8 m the height-dependent slope bottoms out at 20.
    CHECK(pathloss_mbs_uav(150.0, 777.0, 1.5) == pathloss_mbs_uav(300.0, 777.0, 1.5));
    CHECK(pathloss_mbs_uav(40.0, 500.0, 1.5) < pathloss_mbs_uav(40.0, 1000.0, 1.5));
    CHECK_THROWS_AS(pathloss_mbs_uav(9.99, 1000.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(pathloss_mbs_uav(300.01, 1000.0, 1.5), std::domain_error);
    CHECK_NOTHROW(pathloss_mbs_uav(10.0, 1000.0, 1.5));
    CHECK_NOTHROW(pathloss_mbs_uav(300.0, 1000.0, 1.5));
}

TEST_CASE("los probability: building-count boundary and both variants") {
    MplmParams p;  // literal variant by default

    SUBCASE("no buildings crossed gives exactly one") {
        CHECK(los_probability(0.0, 120.0, 2.0, p) == 1.0);
        // z * sqrt(a*b) / 1000 - 1 < 0 for z up to ~316 m.
        CHECK(los_probability(316.0, 120.0, 2.0, p) == 1.0);
        p.los_variant = LosVariant::kStandard;
        CHECK(los_probability(0.0, 120.0, 2.0, p) == 1.0);
        CHECK(los_probability(316.0, 120.0, 2.0, p) == 1.0);
    }

    SUBCASE("literal form goldens") {
        CHECK(los_probability(500.0, 120.0, 2.0, p) ==
              doctest::Approx(0.26287662560837227).epsilon(1e-13));
        // Negative clearance factor is floored at zero, killing the product.
        CHECK(los_probability(900.0, 60.0, 2.0, p) == 0.0);
    }

    SUBCASE("standard form goldens") {
        p.los_variant = LosVariant::kStandard;
        CHECK(los_probability(500.0, 120.0, 2.0, p) ==
              doctest::Approx(0.99999999168329754).epsilon(1e-13));
        CHECK(los_probability(900.0, 60.0, 2.0, p) ==
              doctest::Approx(0.74363608655283645).epsilon(1e-13));
    }

    SUBCASE("never leaves [0, 1] and decays with distance") {
        for (double z : {100.0, 400.0, 700.0, 1100.0, 1600.0})
            for (double h : {45.0, 80.0, 120.0}) {
                const double t = los_probability(z, h, 2.0, p);
                CHECK(t >= 0.0);
                CHECK(t <= 1.0);
            }
        const double t1 = los_probability(300.0, 60.0, 2.0, p);
        const double t2 = los_probability(500.0, 60.0, 2.0, p);
        const double t3 = los_probability(900.0, 60.0, 2.0, p);
        CHECK(t1 >= t2);
        CHECK(t2 >= t3);
    }
}

TEST_CASE("uav-to-ue received power mixes the two power laws") {
    const MplmParams p;
    const double d3 = std::sqrt(500.0 * 500.0 + 118.0 * 118.0);
    CHECK(d3 == doctest::Approx(513.73534042345189).epsilon(1e-14));
    CHECK(rx_power_uav_ue(30.0, d3, 500.0, 120.0, 2.0, p) ==
          doctest::Approx(-32.456549396630408).epsilon(1e-12));

    // Strictly monotone: farther is weaker at fixed heights.
    const double d6 = std::sqrt(600.0 * 600.0 + 118.0 * 118.0);
    CHECK(rx_power_uav_ue(30.0, d6, 600.0, 120.0, 2.0, p) <
          rx_power_uav_ue(30.0, d3, 500.0, 120.0, 2.0, p));

    // 3 dB more transmit power is exactly 3 dB more received power.
    CHECK(rx_power_uav_ue(33.0, d3, 500.0, 120.0, 2.0, p) -
              rx_power_uav_ue(30.0, d3, 500.0, 120.0, 2.0, p) ==
          doctest::Approx(3.0).epsilon(1e-12));
}
