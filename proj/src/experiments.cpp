#include "skyrelay/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "skyrelay/io.hpp"

namespace skyrelay {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

double std_error_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / double(v.size() - 1) / double(v.size()));
}

/// Mean SE of the worst ceil(0.05 K) UEs at one instant.
double fifth_percentile_se(std::vector<double> se) {
    if (se.empty()) return 0.0;
    const std::size_t worst = std::size_t(std::ceil(0.05 * double(se.size())));
    std::partial_sort(se.begin(), se.begin() + worst, se.end());
    return std::accumulate(se.begin(), se.begin() + worst, 0.0) / double(worst);
}

struct StepMetrics {
    double per_ue_se = 0.0;
    double outage = 0.0;
    double fifth_pse = 0.0;
};

StepMetrics reduce_steps(const std::vector<std::vector<double>>& step_ue_se, double t_c) {
    StepMetrics out;
    if (step_ue_se.empty() || step_ue_se.front().empty()) return out;
    const double n_steps = double(step_ue_se.size());
    const double n_ue = double(step_ue_se.front().size());
    for (const auto& se : step_ue_se) {
        double total = 0.0;
        double below = 0.0;
        for (double x : se) {
            total += x;
            if (x < t_c) below += 1.0;
        }
        out.per_ue_se += total / n_ue;
        out.outage += below / n_ue;
        out.fifth_pse += fifth_percentile_se(se);
    }
    out.per_ue_se /= n_steps;
    out.outage /= n_steps;
    out.fifth_pse /= n_steps;
    return out;
}

RealizationMetrics evaluate_mode(const Scenario& s, const Grid& g, const Mode& mode,
                                 int n_steps, double delta_s,
                                 const std::vector<double>& rewards3d,
                                 const DirectPowerCache& cache) {
    RealizationMetrics out;
    if (mode.kind == Mode::Kind::kNoUav) {
        const SnapshotMetrics m = score_no_uav(s, &cache).second;
        const StepMetrics st = reduce_steps({m.se}, s.qos_threshold);
        out.per_ue_se = st.per_ue_se;
        out.outage = st.outage;
        out.fifth_pse = st.fifth_pse;
        out.objective = m.sum_rate * double(n_steps + 1);
        return out;
    }
    DpResult r = mode.kind == Mode::Kind::kThreeD
                     ? solve_dp(s, g, n_steps, delta_s, 1, rewards3d)
                     : solve_dp_2d(s, g, n_steps, mode.height_m, delta_s, 1, rewards3d);
    annotate_trajectory(s, r.trajectory, &cache);
    const StepMetrics st = reduce_steps(r.trajectory.step_ue_se, s.qos_threshold);
    out.per_ue_se = st.per_ue_se;
    out.outage = st.outage;
    out.fifth_pse = st.fifth_pse;
    out.objective = r.trajectory.total_value;
    return out;
}

double pct_gain(double value, double baseline) {
    if (baseline == 0.0) return 0.0;
    return (value - baseline) / baseline * 100.0;
}

}  // namespace

std::string Mode::label() const {
    switch (kind) {
        case Kind::kThreeD: return "3d";
        case Kind::kNoUav: return "no_uav";
        case Kind::kTwoD: break;
    }
    const int h = int(std::lround(height_m));
    return "2d@" + std::to_string(h);
}

Mode Mode::parse(const std::string& text) {
    Mode m;
    if (text == "3d") {
        m.kind = Kind::kThreeD;
    } else if (text == "no_uav") {
        m.kind = Kind::kNoUav;
    } else if (text.rfind("2d@", 0) == 0) {
        m.kind = Kind::kTwoD;
        m.height_m = std::stod(text.substr(3));
    } else {
        throw std::invalid_argument("unknown mode '" + text + "' (want 3d, 2d@<m>, no_uav)");
    }
    return m;
}

const StudyResult::Cell* StudyResult::find(double density, const std::string& mode,
                                           double duration_s) const {
    for (const Cell& c : cells)
        if (c.density == density && c.mode == mode && c.duration_s == duration_s) return &c;
    return nullptr;
}

StudyResult run_study(const StudySpec& spec) {
    if (spec.realizations < 1)
        throw std::invalid_argument("study: need at least one realization");
    std::vector<Mode> modes = spec.modes;
    if (modes.empty()) {
        modes = {Mode{Mode::Kind::kThreeD, 0.0},
                 Mode{Mode::Kind::kTwoD, 40.0},
                 Mode{Mode::Kind::kTwoD, 80.0},
                 Mode{Mode::Kind::kTwoD, 120.0},
                 Mode{Mode::Kind::kNoUav, 0.0}};
    }
    // The paired design needs the no-UAV baseline even if the caller left it
    // out of the mode list.
    if (std::none_of(modes.begin(), modes.end(),
                     [](const Mode& m) { return m.kind == Mode::Kind::kNoUav; }))
        modes.push_back(Mode{Mode::Kind::kNoUav, 0.0});

    const auto t0 = clock_type::now();
    StudyResult result;
    for (int r = 0; r < spec.realizations; ++r)
        result.seeds.push_back(spec.base_seed + std::uint64_t(r));

    const bool tilt_sweep = spec.kind == StudyKind::kDowntiltSweep;
    const std::vector<double> tilts =
        tilt_sweep ? spec.downtilts_deg : std::vector<double>{-1.0};
    const std::vector<double> areas =
        tilt_sweep ? spec.downtilt_area_sizes_km : std::vector<double>{spec.area_km};

    for (double area_size : areas) {
        for (double tilt : tilts) {
            for (double density : spec.mbs_densities) {
                for (double duration : spec.durations_s) {
                    // One cell per mode; realization r writes its own slot, so
                    // the aggregate cannot depend on the worker count.
                    std::vector<StudyResult::Cell> cells(modes.size());
                    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
                        cells[mi].density = density;
                        cells[mi].duration_s = duration;
                        cells[mi].mode = modes[mi].label();
                        cells[mi].per_realization.assign(
                            std::size_t(spec.realizations), RealizationMetrics{});
                    }

                    parallel_for(spec.realizations, spec.jobs, [&](int r) {
                        Mission mission;
                        GenOptions opt;
                        opt.qos_threshold = spec.qos_threshold;
                        Rect area{0.0, 0.0, spec.area_km, spec.area_km};
                        double lambda_mbs = density;
                        double lambda_ue = spec.ue_density;
                        if (tilt_sweep) {
                            // Downtilt sweep varies the map size at fixed node
                            // counts: the mission spans the whole map and the
                            // UAV may not fly beyond it.
                            area = {0.0, 0.0, area_size, area_size};
                            opt.flight_margin_km = 0.0;
                            opt.downtilt_deg = tilt;
                            lambda_mbs = density / area.area_km2();
                            lambda_ue = spec.ue_density / area.area_km2();
                            mission.finish = {area_size, area_size, 0.04};
                        }
                        mission.start = {0.0, 0.0, 0.04};
                        if (!tilt_sweep) mission.finish = {spec.area_km, spec.area_km, 0.04};
                        mission.duration_s = duration;

                        Scenario s;
                        try {
                            s = generate_scenario(area, lambda_mbs, lambda_ue, mission,
                                                  spec.base_seed + std::uint64_t(r), opt);
                        } catch (const std::exception&) {
                            for (auto& c : cells)
                                c.per_realization[std::size_t(r)].feasible = false;
                            return;
                        }

                        const Grid g = build_grid(s);
                        const int n_steps = int(std::floor(duration / spec.delta_s));
                        const DirectPowerCache cache = build_direct_cache(s);
                        const std::vector<double> rewards = stage_rewards(s, g, 1);
                        for (std::size_t mi = 0; mi < modes.size(); ++mi) {
                            try {
                                cells[mi].per_realization[std::size_t(r)] = evaluate_mode(
                                    s, g, modes[mi], n_steps, spec.delta_s, rewards, cache);
                            } catch (const InfeasibleMission&) {
                                cells[mi].per_realization[std::size_t(r)].feasible = false;
                            }
                        }
                    });

                    // Aggregate: paired gains per realization, then averaged.
                    const StudyResult::Cell* baseline = nullptr;
                    for (const auto& c : cells)
                        if (c.mode == "no_uav") baseline = &c;
                    for (const auto& c : cells) {
                        int infeasible = 0;
                        std::vector<double> se, outage, fpse, se_gain, fpse_gain;
                        for (std::size_t r = 0; r < c.per_realization.size(); ++r) {
                            const RealizationMetrics& m = c.per_realization[r];
                            if (!m.feasible || !baseline->per_realization[r].feasible) {
                                ++infeasible;
                                continue;
                            }
                            se.push_back(m.per_ue_se);
                            outage.push_back(m.outage);
                            fpse.push_back(m.fifth_pse);
                            se_gain.push_back(
                                pct_gain(m.per_ue_se, baseline->per_realization[r].per_ue_se));
                            fpse_gain.push_back(
                                pct_gain(m.fifth_pse, baseline->per_realization[r].fifth_pse));
                        }
                        auto push = [&](const std::string& metric,
                                        const std::vector<double>& v) {
                            StudyRow row;
                            row.density = density;
                            row.duration_s = duration;
                            row.mode = c.mode;
                            row.metric = metric;
                            row.mean = mean_of(v);
                            row.std_error = std_error_of(v);
                            row.n = int(v.size());
                            row.infeasible = infeasible;
                            row.extra = tilt_sweep ? tilt : 0.0;
                            row.extra2 = tilt_sweep ? area_size : 0.0;
                            result.rows.push_back(row);
                        };
                        push("per_ue_se", se);
                        push("outage", outage);
                        push("fifth_pse", fpse);
                        if (c.mode != "no_uav") {
                            push("se_gain_pct", se_gain);
                            push("fifth_pse_gain_pct", fpse_gain);
                        }
                        result.cells.push_back(c);
                    }
                }
            }
        }
    }
    result.wall_time_s = seconds_since(t0);
    return result;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit f;
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return f;
    const double mx = std::accumulate(x.begin(), x.begin() + n, 0.0) / double(n);
    const double my = std::accumulate(y.begin(), y.begin() + n, 0.0) / double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

namespace {

/// Deterministic synthetic reward in [0, 1): the benchmark times the sweep,
/// not the radio stack.
double synthetic_reward(int state) {
    std::uint64_t x = std::uint64_t(state) * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    return double(x >> 11) * 0x1.0p-53;
}

Grid synthetic_grid(double area_km, double step_m, int height_count) {
    Scenario s;
    s.area = {0.0, 0.0, area_km, area_km};
    s.flight_area = s.area;
    s.mbs_list.push_back(Mbs{area_km / 2.0, area_km / 2.0});
    s.mission.start = {0.0, 0.0, 0.04};
    s.mission.finish = {area_km, area_km, 0.04};
    s.mission.duration_s = 1e6;
    s.mission.h_max_m = 40.0 + 10.0 * (height_count - 1);
    GridSpec spec;
    spec.step_xy_m = step_m;
    spec.heights_m.clear();
    for (int i = 0; i < height_count; ++i) spec.heights_m.push_back(40.0 + 10.0 * i);
    return build_grid(s, spec);
}

double time_sweep(const Grid& g, int n_steps, double delta_s, int repeats) {
    const ActionTable actions = build_actions(g, 18.75, delta_s);
    std::vector<double> rewards(std::size_t(g.n_states()));
    for (int i = 0; i < g.n_states(); ++i) rewards[std::size_t(i)] = synthetic_reward(i);
    // Loop mission: the sweep cost is independent of the endpoints, and this
    // keeps every horizon feasible.
    const int start = g.index(0, 0, 0);
    const int finish = start;
    double best = 1e300;
    for (int k = 0; k < std::max(1, repeats); ++k) {
        const auto t0 = clock_type::now();
        solve_dp_field(g, actions, rewards, start, finish, n_steps, delta_s);
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

RuntimeScalingResult runtime_scaling(const RuntimeScalingSpec& spec) {
    RuntimeScalingResult out;
    std::vector<double> ns, secs;
    for (double step : spec.grid_steps_m) {
        for (double duration : spec.durations_s) {
            const int n_steps = int(std::floor(duration / spec.delta_s));
            const Grid g = synthetic_grid(spec.area_km, step, 2);
            const double wall = time_sweep(g, n_steps, spec.delta_s, spec.repeats);
            out.vs_horizon.push_back({step, n_steps, g.n_states(), g.nz, wall});
            if (step == spec.grid_steps_m.front()) {
                ns.push_back(double(n_steps));
                secs.push_back(wall);
            }
        }
    }
    for (int hc : spec.height_counts) {
        const Grid g = synthetic_grid(spec.area_km, spec.grid_steps_m.front(), hc);
        const double wall = time_sweep(g, 30, spec.delta_s, spec.repeats);
        out.vs_heights.push_back({spec.grid_steps_m.front(), 30, g.n_states(), hc, wall});
    }
    const LineFit fit = fit_line(ns, secs);
    out.slope_vs_n = fit.slope;
    out.r2_vs_n = fit.r2;
    return out;
}

}  // namespace skyrelay
