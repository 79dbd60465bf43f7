#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skyrelay/antenna.hpp"
#include "skyrelay/channel.hpp"
#include "skyrelay/experiments.hpp"
#include "skyrelay/io.hpp"
#include "skyrelay/planner.hpp"
#include "skyrelay/radio.hpp"
#include "skyrelay/scenario.hpp"

namespace {

using namespace skyrelay;
using nlohmann::ordered_json;

struct OracleMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

/// Baseline world: 1.2 x 1.2 km suburban area, 2 MBS/km^2, 20 UE/km^2,
/// corner-to-corner mission at 40 m, T = 240 s.
Scenario default_scenario(std::uint64_t seed = 1) {
    Mission m;
    m.start = {0.0, 0.0, 0.04};
    m.finish = {1.2, 1.2, 0.04};
    return generate_scenario(Rect{0.0, 0.0, 1.2, 1.2}, 2.0, 20.0, m, seed);
}

/// Config precedence: --config flag, then $SKYRELAY_CONFIG, then the built-in
/// baseline; --set overrides are applied last and win.
Scenario resolve_scenario(const std::string& config_flag, const std::vector<std::string>& sets) {
    std::string path = config_flag;
    if (path.empty()) {
        if (const char* env = std::getenv("SKYRELAY_CONFIG"); env != nullptr && *env != '\0')
            path = env;
    }
    Scenario s = path.empty() ? default_scenario() : load_scenario(path);
    for (const std::string& assignment : sets) apply_override(s, assignment);
    validate(s);
    return s;
}

void write_out(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    write_text_file(path, content);
}

int derive_steps(int steps_flag, double duration_s, double delta_s) {
    if (steps_flag > 0) return steps_flag;
    return int(std::floor(duration_s / delta_s));
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& out, std::uint64_t seed, double area_km, double mbs_density,
            double ue_density, double duration_s, const std::vector<std::string>& sets) {
    Mission m;
    m.start = {0.0, 0.0, 0.04};
    m.finish = {area_km, area_km, 0.04};
    m.duration_s = duration_s;
    Scenario s = generate_scenario(Rect{0.0, 0.0, area_km, area_km}, mbs_density, ue_density, m,
                                   seed);
    for (const std::string& assignment : sets) apply_override(s, assignment);
    validate(s);
    write_out(out, scenario_to_json(s));
    if (out != "-")
        std::printf("wrote %s: %zu MBSs, %zu UEs, seed %llu, config hash %016llx\n", out.c_str(),
                    s.mbs_list.size(), s.ue_list.size(), (unsigned long long)s.rng_seed,
                    (unsigned long long)config_hash(s));
    return 0;
}

int run_snapshot(const std::string& config, const std::vector<std::string>& sets, double x_km,
                 double y_km, double z_m, const std::string& out) {
    const Scenario s = resolve_scenario(config, sets);
    SnapshotReport rep;
    rep.uav_pos = {std::isnan(x_km) ? 0.5 * (s.flight_area.x0 + s.flight_area.x1) : x_km,
                   std::isnan(y_km) ? 0.5 * (s.flight_area.y0 + s.flight_area.y1) : y_km,
                   z_m / 1000.0};
    auto [assoc, with_uav] = associate_and_score(s, rep.uav_pos);
    rep.assoc = assoc;
    rep.with_uav = with_uav;
    rep.without_uav = score_no_uav(s).second;
    write_out(out, snapshot_to_json(s, rep));
    if (out != "-")
        std::printf("wrote %s: sum rate %s bps/Hz with UAV, %s without\n", out.c_str(),
                    format_g9(rep.with_uav.sum_rate).c_str(),
                    format_g9(rep.without_uav.sum_rate).c_str());
    return 0;
}

int run_solve(const std::string& config, const std::vector<std::string>& sets, int steps_flag,
              double delta_s, int jobs, double height_2d, const std::string& out_csv,
              const std::string& out_json) {
    const Scenario s = resolve_scenario(config, sets);
    const Grid g = build_grid(s);
    const int n_steps = derive_steps(steps_flag, s.mission.duration_s, delta_s);
    const auto t0 = clock_type::now();
    DpResult r = std::isnan(height_2d) ? solve_dp(s, g, n_steps, delta_s, jobs)
                                       : solve_dp_2d(s, g, n_steps, height_2d, delta_s, jobs);
    const double wall = seconds_since(t0);
    annotate_trajectory(s, r.trajectory);
    write_out(out_csv, trajectory_to_csv(r.trajectory));
    write_out(out_json, trajectory_to_json(s, r.trajectory, &g, wall));
    std::printf("solved N=%d steps (%zu waypoints) in %s s\n", n_steps,
                r.trajectory.states.size(), format_g9(wall).c_str());
    std::printf("time-averaged sum rate %s bps/Hz, total value %s\n",
                format_g9(r.trajectory.time_avg_sum_rate).c_str(),
                format_g9(r.trajectory.total_value).c_str());
    if (out_csv != "-") std::printf("wrote %s and %s\n", out_csv.c_str(), out_json.c_str());
    return 0;
}

Grid oracle_grid(int nx, int ny, int nz) {
    Scenario s;
    s.area = {0.0, 0.0, 0.1 * (nx - 1) + 1e-9, 0.1 * (ny - 1) + 1e-9};
    s.flight_area = {0.0, 0.0, 0.1 * (nx - 1), 0.1 * (ny - 1)};
    s.mission.start = {0.0, 0.0, 0.04};
    s.mission.finish = s.mission.start;
    s.mission.duration_s = 1e6;
    s.mission.h_max_m = 40.0 + 10.0 * (nz - 1);
    GridSpec spec;
    spec.heights_m.clear();
    for (int i = 0; i < nz; ++i) spec.heights_m.push_back(40.0 + 10.0 * i);
    return build_grid(s, spec);
}

int run_oracle(int n_seeds, const std::string& grid_str, int n_steps, double delta_s) {
    int nx = 0, ny = 0, nz = 0;
    if (std::sscanf(grid_str.c_str(), "%dx%dx%d", &nx, &ny, &nz) != 3 || nx < 1 || ny < 1 ||
        nz < 1)
        throw std::invalid_argument("--grid must look like 3x3x2");
    if (n_seeds < 1) throw std::invalid_argument("--seeds must be at least 1");
    const Grid g = oracle_grid(nx, ny, nz);
    const ActionTable actions = build_actions(g, 18.75, delta_s);

    int agree = 0;
    for (int k = 0; k < n_seeds; ++k) {
        std::mt19937_64 rng(std::uint64_t(k) + 1);
        std::vector<double> rewards(std::size_t(g.n_states()));
        for (double& r : rewards) r = double(rng() >> 11) * 0x1.0p-53;
        std::uniform_int_distribution<int> pick(0, g.n_states() - 1);
        const int start = pick(rng);
        int finish = pick(rng);
        for (int tries = 0; tries < 256; ++tries) {
            const int d = min_steps(actions, g.n_states(), start, finish);
            if (d >= 0 && d <= n_steps) break;
            finish = pick(rng);
        }
        const DpResult dp =
            solve_dp_field(g, actions, rewards, start, finish, n_steps, delta_s);
        const DpResult es =
            exhaustive_search_field(g, actions, rewards, start, finish, n_steps, delta_s);
        if (dp.trajectory.total_value == es.trajectory.total_value) {
            ++agree;
        } else {
            std::fprintf(stderr, "seed %d: dp value %.17g, exhaustive value %.17g\n", k + 1,
                         dp.trajectory.total_value, es.trajectory.total_value);
        }
    }
    std::printf("%d/%d agree\n", agree, n_seeds);
    if (agree != n_seeds)
        throw OracleMismatch("dynamic program and exhaustive search disagree");
    return 0;
}

int run_pattern(double downtilt_deg, int n_elements, double rho, double theta_step,
                double phi_step, const std::string& out) {
    if (theta_step <= 0 || phi_step <= 0)
        throw std::invalid_argument("angle steps must be positive");
    AntennaConfig cfg = AntennaConfig::with_downtilt(downtilt_deg);
    cfg.n_elements = n_elements;
    cfg.rho = rho;
    std::string csv = "theta_prime,phi_prime,element_dB,af_dB,total_dBi\n";
    const int n_theta = int(std::lround(180.0 / theta_step));
    const int n_phi = int(std::lround(360.0 / phi_step));
    for (int i = 0; i <= n_theta; ++i) {
        const double theta = std::min(180.0, i * theta_step);
        const double af = array_factor(theta, cfg);
        for (int j = 0; j <= n_phi; ++j) {
            const double phi = std::min(180.0, -180.0 + j * phi_step);
            csv += format_g9(theta);
            csv += ',';
            csv += format_g9(phi);
            csv += ',';
            csv += format_g9(element_gain(theta, phi, cfg));
            csv += ',';
            csv += format_g9(af);
            csv += ',';
            csv += format_g9(array_gain(theta, phi, cfg));
            csv += '\n';
        }
    }
    write_out(out, csv);
    if (out != "-")
        std::printf("wrote %s (%d x %d angles, downtilt %s deg)\n", out.c_str(), n_theta + 1,
                    n_phi + 1, format_g9(downtilt_deg).c_str());
    return 0;
}

int run_channel(double h_uav_m, double h_bs_m, double h_ue_m, double f_mhz, double uav_dbm,
                double d_min_m, double d_max_m, double d_step_m, const std::string& out) {
    if (d_min_m <= 0 || d_max_m < d_min_m || d_step_m <= 0)
        throw std::invalid_argument("distance range must satisfy 0 < min <= max, step > 0");
    const OhplmConstants ohplm = ohplm_constants(f_mhz, h_bs_m, h_ue_m);
    MplmParams literal;
    literal.los_variant = LosVariant::kLiteral;
    MplmParams standard;
    standard.los_variant = LosVariant::kStandard;

    std::string csv = "d_m,ohplm_db,rma_av_db,p_los_literal,p_los_standard,uav_rx_dbm\n";
    const int n = int(std::floor((d_max_m - d_min_m) / d_step_m + 1e-9));
    for (int i = 0; i <= n; ++i) {
        const double d = d_min_m + i * d_step_m;
        const double d3d_uav_ue = std::hypot(d, h_uav_m - h_ue_m);
        csv += format_g9(d);
        csv += ',';
        csv += format_g9(pathloss_mbs_ue(ohplm, d / 1000.0));
        csv += ',';
        csv += format_g9(pathloss_mbs_uav(h_uav_m, d, f_mhz / 1000.0));
        csv += ',';
        csv += format_g9(los_probability(d, h_uav_m, h_ue_m, literal));
        csv += ',';
        csv += format_g9(los_probability(d, h_uav_m, h_ue_m, standard));
        csv += ',';
        csv += format_g9(rx_power_uav_ue(uav_dbm, d3d_uav_ue, d, h_uav_m, h_ue_m, literal));
        csv += '\n';
    }
    write_out(out, csv);
    if (out != "-") std::printf("wrote %s (%d distances)\n", out.c_str(), n + 1);
    return 0;
}

StudyKind parse_study_kind(const std::string& text) {
    if (text == "se_gain") return StudyKind::kSeGain;
    if (text == "outage") return StudyKind::kOutage;
    if (text == "fifth_percentile") return StudyKind::kFifthPercentile;
    if (text == "downtilt_sweep") return StudyKind::kDowntiltSweep;
    if (text == "runtime_scaling") return StudyKind::kRuntimeScaling;
    throw std::invalid_argument("unknown study kind '" + text + "'");
}

int run_study_cmd(const std::string& spec_path, const std::string& kind_flag, int realizations,
                  const std::vector<double>& densities, const std::vector<double>& durations,
                  const std::vector<std::string>& mode_names, std::uint64_t base_seed,
                  double area_km, int repeats, int jobs, const std::string& out_csv,
                  const std::string& out_manifest) {
    StudySpec spec;
    if (!spec_path.empty()) spec = study_spec_from_json(read_text_file(spec_path));
    if (!kind_flag.empty()) spec.kind = parse_study_kind(kind_flag);
    if (realizations > 0) spec.realizations = realizations;
    if (!densities.empty()) spec.mbs_densities = densities;
    if (!durations.empty()) spec.durations_s = durations;
    if (!mode_names.empty()) {
        spec.modes.clear();
        for (const std::string& name : mode_names) spec.modes.push_back(Mode::parse(name));
    }
    if (base_seed != 0) spec.base_seed = base_seed;
    if (area_km > 0) spec.area_km = area_km;
    spec.jobs = jobs;

    ordered_json manifest;
    std::string csv;
    const auto t0 = clock_type::now();
    if (spec.kind == StudyKind::kRuntimeScaling) {
        RuntimeScalingSpec rs;
        rs.repeats = repeats;
        if (!durations.empty()) rs.durations_s = durations;
        if (area_km > 0) rs.area_km = area_km;
        const RuntimeScalingResult result = runtime_scaling(rs);
        csv = runtime_scaling_to_csv(result);
        ordered_json spec_doc{{"kind", "runtime_scaling"},
                              {"grid_steps_m", rs.grid_steps_m},
                              {"durations_s", rs.durations_s},
                              {"height_counts", rs.height_counts},
                              {"area_km", rs.area_km},
                              {"delta_s", rs.delta_s},
                              {"repeats", rs.repeats}};
        manifest["kind"] = "runtime_scaling";
        manifest["config_hash"] = fnv1a64(spec_doc.dump());
        manifest["spec"] = spec_doc;
        manifest["slope_vs_n_s"] = result.slope_vs_n;
        manifest["r2_vs_n"] = result.r2_vs_n;
        manifest["n_rows"] =
            result.vs_horizon.size() + result.vs_heights.size();
    } else {
        const std::string spec_json = study_spec_to_json(spec);
        const StudyResult result = run_study(spec);
        csv = study_to_csv(result);
        manifest["kind"] = ordered_json::parse(spec_json).at("kind");
        manifest["config_hash"] = fnv1a64(spec_json);
        manifest["spec"] = ordered_json::parse(spec_json);
        manifest["seeds"] = result.seeds;
        manifest["n_rows"] = result.rows.size();
        int infeasible = 0;
        for (const StudyRow& row : result.rows) infeasible = std::max(infeasible, row.infeasible);
        manifest["max_infeasible"] = infeasible;
    }
    manifest["wall_time_s"] = seconds_since(t0);
    manifest["csv"] = out_csv;
    write_out(out_csv, csv);
    write_out(out_manifest, manifest.dump(2) + "\n");
    if (out_csv != "-")
        std::printf("wrote %s and %s in %s s\n", out_csv.c_str(), out_manifest.c_str(),
                    format_g9(manifest["wall_time_s"].get<double>()).c_str());
    return 0;
}

int run_bench(int repeats, double area_km, const std::string& out_csv) {
    RuntimeScalingSpec spec;
    spec.repeats = repeats;
    if (area_km > 0) spec.area_km = area_km;
    const RuntimeScalingResult r = runtime_scaling(spec);
    std::printf("horizon sweep (grid step %s m):\n", format_g9(spec.grid_steps_m.front()).c_str());
    for (const auto& row : r.vs_horizon)
        std::printf("  N=%-3d states=%-5d %s s\n", row.n_steps, row.n_states,
                    format_g9(row.wall_s).c_str());
    std::printf("height sweep (N=30):\n");
    for (const auto& row : r.vs_heights)
        std::printf("  levels=%-2d states=%-5d %s s\n", row.height_count, row.n_states,
                    format_g9(row.wall_s).c_str());
    std::printf("fit vs N: slope %s s/step, R2 = %s\n", format_g9(r.slope_vs_n).c_str(),
                format_g9(r.r2_vs_n).c_str());
    if (!out_csv.empty()) {
        write_text_file(out_csv, runtime_scaling_to_csv(r));
        std::printf("wrote %s\n", out_csv.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skyrelay: downlink UAV-relay network simulator and trajectory planner"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random scenario file");
    std::string gen_out = "scenario.json";
    std::uint64_t gen_seed = 1;
    double gen_area = 1.2, gen_mbs = 2.0, gen_ue = 20.0, gen_duration = 240.0;
    std::vector<std::string> gen_sets;
    gen->add_option("--out", gen_out, "output path, '-' for stdout");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--area", gen_area, "square network area side, km");
    gen->add_option("--mbs-density", gen_mbs, "MBS per km^2");
    gen->add_option("--ue-density", gen_ue, "UE per km^2");
    gen->add_option("--duration", gen_duration, "mission duration, s");
    gen->add_option("--set", gen_sets, "override, e.g. mission.duration_s=320")
        ->type_name("KEY=VAL");

    // snapshot
    auto* snap = app.add_subcommand("snapshot", "score one UAV position");
    std::string snap_config, snap_out = "-";
    std::vector<std::string> snap_sets;
    double snap_x = std::nan(""), snap_y = std::nan(""), snap_z = 80.0;
    snap->add_option("--config", snap_config, "scenario JSON (default $SKYRELAY_CONFIG)");
    snap->add_option("--set", snap_sets, "scenario override")->type_name("KEY=VAL");
    snap->add_option("--x", snap_x, "UAV x, km (default: flight-area center)");
    snap->add_option("--y", snap_y, "UAV y, km (default: flight-area center)");
    snap->add_option("--z", snap_z, "UAV height, m");
    snap->add_option("--out", snap_out, "output path, '-' for stdout");

    // solve / solve2d
    auto* solve = app.add_subcommand("solve", "plan the 3D trajectory");
    auto* solve2d = app.add_subcommand("solve2d", "plan at one fixed height");
    std::string solve_config, solve_csv = "trajectory.csv", solve_json = "trajectory.json";
    std::vector<std::string> solve_sets;
    int solve_steps = 0, solve_jobs = 1;
    double solve_delta = 8.0, solve_height = std::nan("");
    for (CLI::App* c : {solve, solve2d}) {
        c->add_option("--config", solve_config, "scenario JSON (default $SKYRELAY_CONFIG)");
        c->add_option("--set", solve_sets, "scenario override")->type_name("KEY=VAL");
        c->add_option("--steps", solve_steps, "horizon N (default floor(T/delta))");
        c->add_option("--delta", solve_delta, "slot length, s");
        c->add_option("--jobs", solve_jobs, "worker threads");
        c->add_option("--out-csv", solve_csv, "trajectory CSV path");
        c->add_option("--out-json", solve_json, "trajectory JSON path");
    }
    solve2d->add_option("--height", solve_height, "flight height, m (grid level)")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "check DP against exhaustive search");
    int oracle_seeds = 100, oracle_steps = 4;
    std::string oracle_grid_str = "3x3x2";
    double oracle_delta = 8.0;
    oracle->add_option("--seeds", oracle_seeds, "number of random instances");
    oracle->add_option("--grid", oracle_grid_str, "grid dimensions, e.g. 3x3x2");
    oracle->add_option("--steps", oracle_steps, "horizon N");
    oracle->add_option("--delta", oracle_delta, "slot length, s");

    // pattern
    auto* pattern = app.add_subcommand("pattern", "dump the antenna radiation pattern");
    double pat_downtilt = 6.0, pat_rho = 1.0, pat_theta_step = 1.0, pat_phi_step = 5.0;
    int pat_elements = 8;
    std::string pat_out = "pattern.csv";
    pattern->add_option("--downtilt", pat_downtilt, "electrical downtilt, deg");
    pattern->add_option("--elements", pat_elements, "vertical array elements");
    pattern->add_option("--rho", pat_rho, "correlation coefficient");
    pattern->add_option("--theta-step", pat_theta_step, "zenith step, deg");
    pattern->add_option("--phi-step", pat_phi_step, "azimuth step, deg");
    pattern->add_option("--out", pat_out, "output path, '-' for stdout");

    // channel
    auto* channel = app.add_subcommand("channel", "dump path-loss-vs-distance curves");
    double ch_h_uav = 120.0, ch_h_bs = 30.0, ch_h_ue = 2.0, ch_f = 1500.0, ch_p = 30.0;
    double ch_d_min = 100.0, ch_d_max = 5000.0, ch_d_step = 100.0;
    std::string ch_out = "channel.csv";
    channel->add_option("--h-uav", ch_h_uav, "UAV height, m");
    channel->add_option("--h-bs", ch_h_bs, "MBS height, m");
    channel->add_option("--h-ue", ch_h_ue, "UE height, m");
    channel->add_option("--freq-mhz", ch_f, "carrier frequency, MHz");
    channel->add_option("--uav-power", ch_p, "UAV transmit power, dBm");
    channel->add_option("--d-min", ch_d_min, "first distance, m");
    channel->add_option("--d-max", ch_d_max, "last distance, m");
    channel->add_option("--d-step", ch_d_step, "distance step, m");
    channel->add_option("--out", ch_out, "output path, '-' for stdout");

    // study
    auto* study = app.add_subcommand("study", "run a Monte Carlo study");
    std::string study_spec_path, study_kind, study_csv = "study.csv";
    std::string study_manifest = "study_manifest.json";
    int study_realizations = 0, study_repeats = 3, study_jobs = 1;
    std::vector<double> study_densities, study_durations;
    std::vector<std::string> study_modes;
    std::uint64_t study_seed = 0;
    double study_area = 0.0;
    study->add_option("--spec", study_spec_path, "StudySpec JSON file");
    study->add_option("--kind", study_kind, "study kind")
        ->check(CLI::IsMember({"se_gain", "outage", "fifth_percentile", "downtilt_sweep",
                               "runtime_scaling"}));
    study->add_option("--realizations", study_realizations, "Monte Carlo realizations");
    study->add_option("--densities", study_densities, "MBS densities per km^2");
    study->add_option("--durations", study_durations, "mission durations, s");
    study->add_option("--modes", study_modes, "modes: 3d / 2d@H / no_uav");
    study->add_option("--seed", study_seed, "base RNG seed (realization r uses seed+r)");
    study->add_option("--area", study_area, "network area side, km");
    study->add_option("--repeats", study_repeats, "timing repeats (runtime_scaling)");
    study->add_option("--jobs", study_jobs, "worker threads");
    study->add_option("--out-csv", study_csv, "result CSV path");
    study->add_option("--out-manifest", study_manifest, "manifest JSON path");

    // bench
    auto* bench = app.add_subcommand("bench", "time the DP sweep and print the scaling fit");
    int bench_repeats = 1;
    double bench_area = 0.0;
    std::string bench_csv;
    bench->add_option("--repeats", bench_repeats, "timing repeats");
    bench->add_option("--area", bench_area, "flight area side, km");
    bench->add_option("--out-csv", bench_csv, "also write rows as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(gen))
            return run_gen(gen_out, gen_seed, gen_area, gen_mbs, gen_ue, gen_duration, gen_sets);
        if (app.got_subcommand(snap))
            return run_snapshot(snap_config, snap_sets, snap_x, snap_y, snap_z, snap_out);
        if (app.got_subcommand(solve))
            return run_solve(solve_config, solve_sets, solve_steps, solve_delta, solve_jobs,
                             std::nan(""), solve_csv, solve_json);
        if (app.got_subcommand(solve2d))
            return run_solve(solve_config, solve_sets, solve_steps, solve_delta, solve_jobs,
                             solve_height, solve_csv, solve_json);
        if (app.got_subcommand(oracle))
            return run_oracle(oracle_seeds, oracle_grid_str, oracle_steps, oracle_delta);
        if (app.got_subcommand(pattern))
            return run_pattern(pat_downtilt, pat_elements, pat_rho, pat_theta_step, pat_phi_step,
                               pat_out);
        if (app.got_subcommand(channel))
            return run_channel(ch_h_uav, ch_h_bs, ch_h_ue, ch_f, ch_p, ch_d_min, ch_d_max,
                               ch_d_step, ch_out);
        if (app.got_subcommand(study))
            return run_study_cmd(study_spec_path, study_kind, study_realizations, study_densities,
                                 study_durations, study_modes, study_seed, study_area,
                                 study_repeats, study_jobs, study_csv, study_manifest);
        if (app.got_subcommand(bench)) return run_bench(bench_repeats, bench_area, bench_csv);
        std::fprintf(stderr, "no subcommand\n");
        return 2;
    } catch (const OracleMismatch& e) {
        std::fprintf(stderr, "oracle: %s\n", e.what());
        return 4;
    } catch (const InfeasibleMission& e) {
        std::fprintf(stderr, "infeasible mission: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
