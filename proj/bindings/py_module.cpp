#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>

#include "skyrelay/antenna.hpp"
#include "skyrelay/channel.hpp"
#include "skyrelay/experiments.hpp"
#include "skyrelay/io.hpp"
#include "skyrelay/planner.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/scenario.hpp"

namespace py = pybind11;

namespace {

using namespace skyrelay;

MplmParams mplm_for(const std::string& variant) {
    MplmParams p;
    if (variant == "literal")
        p.los_variant = LosVariant::kLiteral;
    else if (variant == "standard")
        p.los_variant = LosVariant::kStandard;
    else
        throw std::invalid_argument("variant must be 'literal' or 'standard'");
    return p;
}

AntennaConfig antenna_for(double downtilt_deg, int elements, double rho) {
    AntennaConfig c = AntennaConfig::with_downtilt(downtilt_deg);
    c.n_elements = elements;
    c.rho = rho;
    return c;
}

std::string py_generate(double area_km, double mbs_density, double ue_density,
                        double duration_s, std::uint64_t seed) {
    Mission m;
    m.start = {0.0, 0.0, 0.04};
    m.finish = {area_km, area_km, 0.04};
    m.duration_s = duration_s;
    const Scenario s = generate_scenario(Rect{0.0, 0.0, area_km, area_km}, mbs_density,
                                         ue_density, m, seed);
    return scenario_to_json(s);
}

std::string py_apply_override(const std::string& scenario_json, const std::string& assignment) {
    Scenario s = scenario_from_json(scenario_json);
    apply_override(s, assignment);
    validate(s);
    return scenario_to_json(s);
}

std::string py_snapshot(const std::string& scenario_json, double x_km, double y_km, double z_m) {
    const Scenario s = scenario_from_json(scenario_json);
    SnapshotReport rep;
    rep.uav_pos = {x_km, y_km, z_m / 1000.0};
    auto [assoc, with_uav] = associate_and_score(s, rep.uav_pos);
    rep.assoc = assoc;
    rep.with_uav = with_uav;
    rep.without_uav = score_no_uav(s).second;
    return snapshot_to_json(s, rep);
}

Trajectory solve_impl(const std::string& scenario_json, int steps, double delta_s, int jobs,
                      double height_m, Scenario& s_out, Grid& g_out) {
    s_out = scenario_from_json(scenario_json);
    g_out = build_grid(s_out);
    const int n =
        steps > 0 ? steps : int(std::floor(s_out.mission.duration_s / delta_s));
    DpResult r = std::isnan(height_m) ? solve_dp(s_out, g_out, n, delta_s, jobs)
                                      : solve_dp_2d(s_out, g_out, n, height_m, delta_s, jobs);
    annotate_trajectory(s_out, r.trajectory);
    return r.trajectory;
}

std::string py_solve(const std::string& scenario_json, int steps, double delta_s, int jobs) {
    Scenario s;
    Grid g;
    const Trajectory t = solve_impl(scenario_json, steps, delta_s, jobs, std::nan(""), s, g);
    return trajectory_to_json(s, t, &g);
}

std::string py_solve_2d(const std::string& scenario_json, double height_m, int steps,
                        double delta_s, int jobs) {
    Scenario s;
    Grid g;
    const Trajectory t = solve_impl(scenario_json, steps, delta_s, jobs, height_m, s, g);
    return trajectory_to_json(s, t, &g);
}

std::string py_solve_csv(const std::string& scenario_json, int steps, double delta_s, int jobs) {
    Scenario s;
    Grid g;
    const Trajectory t = solve_impl(scenario_json, steps, delta_s, jobs, std::nan(""), s, g);
    return trajectory_to_csv(t);
}

std::string py_run_study(const std::string& spec_json) {
    const StudySpec spec = study_spec_from_json(spec_json);
    return study_to_csv(run_study(spec));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "skyrelay: downlink UAV-relay network simulator and trajectory planner";

    py::register_exception<InfeasibleMission>(m, "InfeasibleMission");

    m.def("generate_scenario", &py_generate, py::arg("area_km") = 1.2,
          py::arg("mbs_density") = 2.0, py::arg("ue_density") = 20.0,
          py::arg("duration_s") = 240.0, py::arg("seed") = 1,
          "Generate a random scenario; returns its JSON document.");
    m.def(
        "validate_scenario",
        [](const std::string& text) { validate(scenario_from_json(text)); },
        py::arg("scenario_json"), "Raise if the scenario document is invalid.");
    m.def("apply_override", &py_apply_override, py::arg("scenario_json"),
          py::arg("assignment"),
          "Apply a dotted-path override like 'mission.duration_s=320'; returns new JSON.");
    m.def(
        "config_hash",
        [](const std::string& text) { return config_hash(scenario_from_json(text)); },
        py::arg("scenario_json"), "Stable 64-bit hash of the canonical scenario document.");

    m.def("snapshot", &py_snapshot, py::arg("scenario_json"), py::arg("x_km"), py::arg("y_km"),
          py::arg("z_m"), "Score one UAV position; returns a JSON report.");
    m.def("solve", &py_solve, py::arg("scenario_json"), py::arg("steps") = 0,
          py::arg("delta_s") = 8.0, py::arg("jobs") = 1,
          "Plan the 3D trajectory; returns trajectory JSON.");
    m.def("solve_2d", &py_solve_2d, py::arg("scenario_json"), py::arg("height_m"),
          py::arg("steps") = 0, py::arg("delta_s") = 8.0, py::arg("jobs") = 1,
          "Plan at one fixed height; returns trajectory JSON.");
    m.def("solve_csv", &py_solve_csv, py::arg("scenario_json"), py::arg("steps") = 0,
          py::arg("delta_s") = 8.0, py::arg("jobs") = 1,
          "Plan the 3D trajectory; returns the waypoint CSV.");
    m.def("run_study", &py_run_study, py::arg("spec_json"),
          "Run a Monte Carlo study from a StudySpec JSON; returns the result CSV.");

    m.def(
        "ohplm_pathloss",
        [](double d_km, double f_mhz, double h_bs_m, double h_ue_m) {
            return pathloss_mbs_ue(ohplm_constants(f_mhz, h_bs_m, h_ue_m), d_km);
        },
        py::arg("d_km"), py::arg("f_mhz") = 1500.0, py::arg("h_bs_m") = 30.0,
        py::arg("h_ue_m") = 2.0, "Okumura-Hata suburban path loss, dB.");
    m.def("rma_pathloss", &pathloss_mbs_uav, py::arg("h_uav_m"), py::arg("d3d_m"),
          py::arg("f_ghz") = 1.5, "RMa-AV LoS path loss for the backhaul link, dB.");
    m.def(
        "los_probability",
        [](double z_m, double h_uav_m, double h_ue_m, const std::string& variant) {
            return los_probability(z_m, h_uav_m, h_ue_m, mplm_for(variant));
        },
        py::arg("z_m"), py::arg("h_uav_m"), py::arg("h_ue_m") = 2.0,
        py::arg("variant") = "literal", "Building-grid LoS probability.");
    m.def(
        "uav_rx_power",
        [](double p_dbm, double d3d_m, double z_m, double h_uav_m, double h_ue_m,
           const std::string& variant) {
            return rx_power_uav_ue(p_dbm, d3d_m, z_m, h_uav_m, h_ue_m, mplm_for(variant));
        },
        py::arg("p_dbm"), py::arg("d3d_m"), py::arg("z_m"), py::arg("h_uav_m"),
        py::arg("h_ue_m") = 2.0, py::arg("variant") = "literal",
        "UAV-to-UE received power through the LoS/NLoS mixture, dBm.");

    m.def(
        "element_gain",
        [](double theta, double phi, double downtilt, int elements, double rho) {
            return element_gain(theta, phi, antenna_for(downtilt, elements, rho));
        },
        py::arg("theta_prime_deg"), py::arg("phi_prime_deg"), py::arg("downtilt_deg") = 6.0,
        py::arg("elements") = 8, py::arg("rho") = 1.0, "3GPP element gain, dBi.");
    m.def(
        "array_factor",
        [](double theta, double downtilt, int elements, double rho) {
            return array_factor(theta, antenna_for(downtilt, elements, rho));
        },
        py::arg("theta_prime_deg"), py::arg("downtilt_deg") = 6.0, py::arg("elements") = 8,
        py::arg("rho") = 1.0, "Vertical ULA array factor, dB.");
    m.def(
        "array_gain",
        [](double theta, double phi, double downtilt, int elements, double rho) {
            return array_gain(theta, phi, antenna_for(downtilt, elements, rho));
        },
        py::arg("theta_prime_deg"), py::arg("phi_prime_deg"), py::arg("downtilt_deg") = 6.0,
        py::arg("elements") = 8, py::arg("rho") = 1.0,
        "Total radiation gain (element plus array factor), dBi.");

    m.attr("__version__") = "0.1.0";
}
