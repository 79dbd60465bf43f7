#include "skyrelay/planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "parallel.hpp"

namespace skyrelay {

namespace {

int nearest_index(const std::vector<double>& axis, double v) {
    int best = 0;
    for (int i = 1; i < int(axis.size()); ++i)
        if (std::fabs(axis[std::size_t(i)] - v) < std::fabs(axis[std::size_t(best)] - v))
            best = i;
    return best;
}

Trajectory extract_trajectory(const Grid& g, const ValueTable& table, int start_state,
                              double delta_s) {
    Trajectory t;
    t.delta_s = delta_s;
    t.states.reserve(std::size_t(table.n_steps) + 1);
    int cur = start_state;
    t.states.push_back(cur);
    for (int i = 0; i < table.n_steps; ++i) {
        cur = table.next[std::size_t(i)][std::size_t(cur)];
        t.states.push_back(cur);
    }
    t.waypoints.reserve(t.states.size());
    for (int s : t.states) t.waypoints.push_back(g.position(s));
    t.total_value = table.value[0][std::size_t(start_state)];
    t.time_avg_sum_rate = t.total_value / double(table.n_steps + 1);
    return t;
}

}  // namespace

int Grid::snap(const Vec3& p) const {
    return index(nearest_index(xs_km, p.x), nearest_index(ys_km, p.y),
                 nearest_index(zs_m, p.z_m()));
}

Grid build_grid(const Scenario& s, const GridSpec& spec) {
    if (!(spec.step_xy_m > 0.0)) throw std::invalid_argument("grid: step must be positive");
    Grid g;
    g.bounds = s.flight_area;
    g.step_xy_m = spec.step_xy_m;
    const double step_km = spec.step_xy_m / 1000.0;
    g.nx = int(std::floor(g.bounds.width() / step_km + 1e-9)) + 1;
    g.ny = int(std::floor(g.bounds.height() / step_km + 1e-9)) + 1;
    if (g.nx < 2 || g.ny < 2)
        throw std::invalid_argument("grid: flight area is smaller than one xy step");
    for (int i = 0; i < g.nx; ++i) g.xs_km.push_back(g.bounds.x0 + i * step_km);
    for (int i = 0; i < g.ny; ++i) g.ys_km.push_back(g.bounds.y0 + i * step_km);
    for (double h : spec.heights_m)
        if (h >= s.mission.h_min_m - 1e-9 && h <= s.mission.h_max_m + 1e-9)
            g.zs_m.push_back(h);
    std::sort(g.zs_m.begin(), g.zs_m.end());
    g.nz = int(g.zs_m.size());
    if (g.nz == 0)
        throw std::invalid_argument("grid: no height level inside [h_min, h_max]");
    for (const Vec3& p : {s.mission.start, s.mission.finish}) {
        if (!g.bounds.contains(p.x, p.y))
            throw InfeasibleMission("grid: mission endpoint outside the flight area");
        if (p.z_m() < s.mission.h_min_m - 1e-9 || p.z_m() > s.mission.h_max_m + 1e-9)
            throw InfeasibleMission("grid: mission endpoint outside the height band");
    }
    return g;
}

ActionTable build_actions(const Grid& g, double v_max_mps, double delta_s) {
    if (!(v_max_mps > 0.0 && delta_s > 0.0))
        throw std::invalid_argument("actions: v_max and delta must be positive");
    const double reach_m = v_max_mps * delta_s;
    ActionTable t;
    t.succ.resize(std::size_t(g.n_states()));
    std::vector<std::int32_t> others;
    for (int s = 0; s < g.n_states(); ++s) {
        const int ix = g.ix_of(s), iy = g.iy_of(s), iz = g.iz_of(s);
        auto& list = t.succ[std::size_t(s)];
        list.push_back(s);  // stay first: the DP tie-break leans on this
        others.clear();
        for (int jz = 0; jz < g.nz; ++jz) {
            const double dz = g.zs_m[std::size_t(jz)] - g.zs_m[std::size_t(iz)];
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jx >= g.nx || jy < 0 || jy >= g.ny) continue;
                    if (dx == 0 && dy == 0 && jz == iz) continue;  // stay, already in
                    const double dxm = dx * g.step_xy_m, dym = dy * g.step_xy_m;
                    if (std::sqrt(dxm * dxm + dym * dym + dz * dz) > reach_m) continue;
                    others.push_back(g.index(jx, jy, jz));
                }
            }
        }
        std::sort(others.begin(), others.end());  // then smallest state index
        list.insert(list.end(), others.begin(), others.end());
        t.max_fanout = std::max(t.max_fanout, int(list.size()));
    }
    return t;
}

std::vector<double> stage_rewards(const Scenario& s, const Grid& g, int jobs) {
    const DirectPowerCache cache = build_direct_cache(s);
    std::vector<double> rewards(std::size_t(g.n_states()), 0.0);
    parallel_for(g.n_states(), jobs, [&](int st) {
        rewards[std::size_t(st)] =
            associate_and_score(s, g.position(st), &cache).second.sum_rate;
    });
    return rewards;
}

DpResult solve_dp_field(const Grid& g, const ActionTable& actions,
                        std::span<const double> rewards, int start_state,
                        int finish_state, int n_steps, double delta_s) {
    const int ns = g.n_states();
    if (int(rewards.size()) != ns)
        throw std::invalid_argument("dp: reward field size does not match the grid");
    if (n_steps < 0) throw std::invalid_argument("dp: negative horizon");

    ValueTable table;
    table.n_steps = n_steps;
    table.value.assign(std::size_t(n_steps) + 1,
                       std::vector<double>(std::size_t(ns), kNegInf));
    table.next.assign(std::size_t(n_steps),
                      std::vector<std::int32_t>(std::size_t(ns), -1));

    // Terminal step: only arriving exactly at the finish earns its reward.
    table.value[std::size_t(n_steps)][std::size_t(finish_state)] =
        rewards[std::size_t(finish_state)];

    for (int i = n_steps - 1; i >= 0; --i) {
        const auto& nxt = table.value[std::size_t(i) + 1];
        auto& cur = table.value[std::size_t(i)];
        auto& arg = table.next[std::size_t(i)];
        for (int s = 0; s < ns; ++s) {
            double best = kNegInf;
            std::int32_t best_next = -1;
            for (std::int32_t nb : actions.succ[std::size_t(s)]) {
                const double v = nxt[std::size_t(nb)];
                if (v > best) {  // strict: ties keep the earliest (stay, then index)
                    best = v;
                    best_next = nb;
                }
            }
            if (best_next >= 0 && best > kNegInf) {
                cur[std::size_t(s)] = rewards[std::size_t(s)] + best;
                arg[std::size_t(s)] = best_next;
            }
        }
    }

    if (!(table.value[0][std::size_t(start_state)] > kNegInf))
        throw InfeasibleMission(
            "dp: the finish state is unreachable from the start within " +
            std::to_string(n_steps) + " steps");

    DpResult r;
    r.trajectory = extract_trajectory(g, table, start_state, delta_s);
    r.table = std::move(table);
    return r;
}

DpResult solve_dp(const Scenario& s, const Grid& g, int n_steps, double delta_s, int jobs,
                  std::span<const double> rewards3d) {
    const ActionTable actions = build_actions(g, s.mission.v_max_mps, delta_s);
    std::vector<double> rewards;
    if (!rewards3d.empty()) {
        if (int(rewards3d.size()) != g.n_states())
            throw std::invalid_argument("solve: 3D reward field size mismatch");
        rewards.assign(rewards3d.begin(), rewards3d.end());
    } else {
        rewards = stage_rewards(s, g, jobs);
    }
    const int start = g.snap(s.mission.start);
    const int finish = g.snap(s.mission.finish);
    DpResult r = solve_dp_field(g, actions, rewards, start, finish, n_steps, delta_s);
    r.trajectory.snap_error_start_m = dist3d_m(s.mission.start, g.position(start));
    r.trajectory.snap_error_finish_m = dist3d_m(s.mission.finish, g.position(finish));
    return r;
}

DpResult solve_dp_2d(const Scenario& s, const Grid& g, int n_steps, double fixed_height_m,
                     double delta_s, int jobs, std::span<const double> rewards3d) {
    int iz = -1;
    for (int i = 0; i < g.nz; ++i)
        if (std::fabs(g.zs_m[std::size_t(i)] - fixed_height_m) <= 1e-9) iz = i;
    if (iz < 0)
        throw std::invalid_argument("solve2d: fixed height is not a grid level");
    if (n_steps < 0) throw std::invalid_argument("dp: negative horizon");

    // The mission endpoints stay where the mission puts them; only the stages
    // in between are pinned to the fixed level.  Every 2D trajectory is then
    // also feasible for the 3D solver, so 3D can never score lower.
    const int ns = g.n_states();
    const int start = g.snap(s.mission.start);
    const int finish = g.snap(s.mission.finish);

    std::vector<double> rewards;
    if (!rewards3d.empty()) {
        if (int(rewards3d.size()) != ns)
            throw std::invalid_argument("solve2d: 3D reward field size mismatch");
        rewards.assign(rewards3d.begin(), rewards3d.end());
    } else {
        // Score only the fixed level and the two endpoints; nothing else is
        // ever read.
        const DirectPowerCache cache = build_direct_cache(s);
        rewards.assign(std::size_t(ns), 0.0);
        const int plane = g.nx * g.ny;
        std::vector<int> wanted;
        wanted.reserve(std::size_t(plane) + 2);
        for (int j = 0; j < plane; ++j) wanted.push_back(iz * plane + j);
        for (int e : {start, finish})
            if (g.iz_of(e) != iz) wanted.push_back(e);
        parallel_for(int(wanted.size()), jobs, [&](int k) {
            const int st = wanted[std::size_t(k)];
            rewards[std::size_t(st)] =
                associate_and_score(s, g.position(st), &cache).second.sum_rate;
        });
    }

    const ActionTable actions = build_actions(g, s.mission.v_max_mps, delta_s);
    const auto allowed = [&](int stage, int state) {
        if (stage == 0) return state == start;
        if (stage == n_steps) return state == finish;
        return g.iz_of(state) == iz;
    };

    ValueTable table;
    table.n_steps = n_steps;
    table.value.assign(std::size_t(n_steps) + 1,
                       std::vector<double>(std::size_t(ns), kNegInf));
    table.next.assign(std::size_t(n_steps),
                      std::vector<std::int32_t>(std::size_t(ns), -1));
    table.value[std::size_t(n_steps)][std::size_t(finish)] =
        rewards[std::size_t(finish)];

    for (int i = n_steps - 1; i >= 0; --i) {
        const auto& nxt = table.value[std::size_t(i) + 1];
        auto& cur = table.value[std::size_t(i)];
        auto& arg = table.next[std::size_t(i)];
        for (int st = 0; st < ns; ++st) {
            if (!allowed(i, st)) continue;
            double best = kNegInf;
            std::int32_t best_next = -1;
            for (std::int32_t nb : actions.succ[std::size_t(st)]) {
                if (!allowed(i + 1, nb)) continue;
                const double v = nxt[std::size_t(nb)];
                if (v > best) {  // strict: ties keep the earliest (stay, then index)
                    best = v;
                    best_next = nb;
                }
            }
            if (best_next >= 0 && best > kNegInf) {
                cur[std::size_t(st)] = rewards[std::size_t(st)] + best;
                arg[std::size_t(st)] = best_next;
            }
        }
    }

    if (!(table.value[0][std::size_t(start)] > kNegInf))
        throw InfeasibleMission(
            "dp: the finish state is unreachable from the start within " +
            std::to_string(n_steps) + " steps");

    DpResult r;
    r.trajectory = extract_trajectory(g, table, start, delta_s);
    r.table = std::move(table);
    r.trajectory.snap_error_start_m = dist3d_m(s.mission.start, g.position(start));
    r.trajectory.snap_error_finish_m = dist3d_m(s.mission.finish, g.position(finish));
    return r;
}

DpResult exhaustive_search_field(const Grid& g, const ActionTable& actions,
                                 std::span<const double> rewards, int start_state,
                                 int finish_state, int n_steps, double delta_s,
                                 double budget) {
    if (int(rewards.size()) != g.n_states())
        throw std::invalid_argument("es: reward field size does not match the grid");
    if (std::pow(double(std::max(actions.max_fanout, 1)), double(n_steps)) > budget)
        throw std::length_error("es: instance exceeds the enumeration budget");

    // Remaining-steps lower bound, so the walk never leaves states that
    // cannot reach the finish in time.  This skips only infeasible branches.
    std::vector<int> to_finish(std::size_t(g.n_states()), -1);
    {
        std::deque<int> q{finish_state};
        to_finish[std::size_t(finish_state)] = 0;
        while (!q.empty()) {
            const int s = q.front();
            q.pop_front();
            for (std::int32_t nb : actions.succ[std::size_t(s)])
                if (to_finish[std::size_t(nb)] < 0) {
                    to_finish[std::size_t(nb)] = to_finish[std::size_t(s)] + 1;
                    q.push_back(nb);
                }
        }
    }

    std::vector<int> path(std::size_t(n_steps) + 1, -1);
    std::vector<int> best_path;
    double best_value = kNegInf;
    bool found = false;
    path[0] = start_state;

    // Iterative DFS over action sequences, visiting successors in table
    // order so the first optimum found matches the DP tie-break.
    std::vector<std::size_t> choice(std::size_t(n_steps) + 1, 0);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n_steps) {
            if (path[std::size_t(depth)] == finish_state) {
                // Backward fold: identical association order to the DP's
                // reward-plus-max recursion, so equal paths give bitwise
                // equal values.
                double v = rewards[std::size_t(path[std::size_t(n_steps)])];
                for (int i = n_steps - 1; i >= 0; --i)
                    v = rewards[std::size_t(path[std::size_t(i)])] + v;
                if (!found || v > best_value) {
                    found = true;
                    best_value = v;
                    best_path = path;
                }
            }
            --depth;
            continue;
        }
        const int s = path[std::size_t(depth)];
        const auto& succ = actions.succ[std::size_t(s)];
        bool advanced = false;
        while (choice[std::size_t(depth)] < succ.size()) {
            const int nb = succ[choice[std::size_t(depth)]++];
            const int remaining = n_steps - depth - 1;
            if (to_finish[std::size_t(nb)] < 0 || to_finish[std::size_t(nb)] > remaining)
                continue;
            path[std::size_t(depth) + 1] = nb;
            ++depth;
            choice[std::size_t(depth)] = 0;
            advanced = true;
            break;
        }
        if (!advanced) --depth;
    }

    if (!found)
        throw InfeasibleMission(
            "es: the finish state is unreachable from the start within " +
            std::to_string(n_steps) + " steps");

    DpResult r;
    r.table.n_steps = n_steps;
    Trajectory& t = r.trajectory;
    t.delta_s = delta_s;
    t.states = best_path;
    for (int s : t.states) t.waypoints.push_back(g.position(s));
    t.total_value = best_value;
    t.time_avg_sum_rate = best_value / double(n_steps + 1);
    return r;
}

DpResult exhaustive_search(const Scenario& s, const Grid& g, int n_steps, double delta_s,
                           double budget) {
    const ActionTable actions = build_actions(g, s.mission.v_max_mps, delta_s);
    const std::vector<double> rewards = stage_rewards(s, g, 1);
    return exhaustive_search_field(g, actions, rewards, g.snap(s.mission.start),
                                   g.snap(s.mission.finish), n_steps, delta_s, budget);
}

void annotate_trajectory(const Scenario& s, Trajectory& t, const DirectPowerCache* cache) {
    DirectPowerCache local;
    if (!cache) {
        local = build_direct_cache(s);
        cache = &local;
    }
    const std::size_t n = t.waypoints.size();
    t.step_sum_rate.assign(n, 0.0);
    t.step_backhaul_sir_db.assign(n, 0.0);
    t.step_ue_se.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        const SnapshotMetrics metrics = associate_and_score(s, t.waypoints[i], cache).second;
        t.step_sum_rate[i] = metrics.sum_rate;
        t.step_backhaul_sir_db[i] = linear_to_db(metrics.backhaul_sir);
        t.step_ue_se[i] = metrics.se;
    }
}

int min_steps(const ActionTable& actions, int n_states, int from, int to) {
    if (from == to) return 0;
    std::vector<int> dist(std::size_t(n_states), -1);
    std::deque<int> q{from};
    dist[std::size_t(from)] = 0;
    while (!q.empty()) {
        const int s = q.front();
        q.pop_front();
        for (std::int32_t nb : actions.succ[std::size_t(s)]) {
            if (dist[std::size_t(nb)] >= 0) continue;
            dist[std::size_t(nb)] = dist[std::size_t(s)] + 1;
            if (nb == to) return dist[std::size_t(nb)];
            q.push_back(nb);
        }
    }
    return -1;
}

double proposition_time_bound(double l_m, double w_m, double h_m, double v_max_mps) {
    return (std::sqrt(w_m * w_m + h_m * h_m) + std::sqrt(l_m * l_m + h_m * h_m)) /
           v_max_mps;
}

PropositionVerdict check_proposition_cuboid(const Grid& g, int peak_state,
                                            double v_max_mps, double total_time_s,
                                            double delta_s) {
    PropositionVerdict v;
    const double l = (g.nx - 1) * g.step_xy_m;
    const double w = (g.ny - 1) * g.step_xy_m;
    const double h = g.zs_m.back() - g.zs_m.front();
    v.bound_satisfied = total_time_s >= proposition_time_bound(l, w, h, v_max_mps);

    const int start = g.index(0, 0, g.nz - 1);
    const int finish = g.index(g.nx - 1, g.ny - 1, g.nz - 1);
    const int n_steps = int(std::floor(total_time_s / delta_s));

    std::vector<double> rewards(std::size_t(g.n_states()), 0.0);
    rewards[std::size_t(peak_state)] = 1.0;

    const ActionTable actions = build_actions(g, v_max_mps, delta_s);
    const DpResult r = solve_dp_field(g, actions, rewards, start, finish, n_steps, delta_s);

    for (std::size_t i = 0; i + 1 < r.trajectory.states.size(); ++i) {
        const int a = r.trajectory.states[i], b = r.trajectory.states[i + 1];
        if (a == b)
            ++v.n_hover_steps;
        else
            ++v.n_move_steps;
    }
    v.peak_visited = std::find(r.trajectory.states.begin(), r.trajectory.states.end(),
                               peak_state) != r.trajectory.states.end();
    v.hovers_only_at_peak = true;
    for (std::size_t i = 0; i + 1 < r.trajectory.states.size(); ++i)
        if (r.trajectory.states[i] == r.trajectory.states[i + 1] &&
            r.trajectory.states[i] != peak_state)
            v.hovers_only_at_peak = false;
    v.min_travel_steps = min_steps(actions, g.n_states(), start, peak_state) +
                         min_steps(actions, g.n_states(), peak_state, finish);
    v.travel_is_minimal = v.peak_visited && v.n_move_steps == v.min_travel_steps;
    return v;
}

}  // namespace skyrelay
