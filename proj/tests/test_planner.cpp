#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skyrelay/planner.hpp"

using namespace skyrelay;

namespace {

Scenario corner_scenario(std::uint64_t seed) {
    Mission m;
    m.start = {0.0, 0.0, 0.04};
    m.finish = {1.2, 1.2, 0.04};
    return generate_scenario(Rect{0.0, 0.0, 1.2, 1.2}, 2.0, 20.0, m, seed);
}

/// 3-state line at one height: moves are stay / left / right.
Grid line3() {
    Grid g;
    g.bounds = {0.0, 0.0, 0.2, 0.0};
    g.step_xy_m = 100.0;
    g.nx = 3;
    g.ny = 1;
    g.nz = 1;
    g.xs_km = {0.0, 0.1, 0.2};
    g.ys_km = {0.0};
    g.zs_m = {40.0};
    return g;
}

Scenario tiny_scenario() {
    Scenario s;
    s.area = {0.0, 0.0, 0.2, 0.2};
    s.flight_area = s.area;
    Mbs m;
    m.x_km = 0.1;
    m.y_km = 0.1;
    s.mbs_list.push_back(m);
    s.ue_list.push_back(Ue{0.05, 0.15});
    s.ue_list.push_back(Ue{0.18, 0.03});
    s.mission.start = {0.0, 0.0, 0.04};
    s.mission.finish = {0.2, 0.2, 0.04};
    s.mission.duration_s = 60.0;
    s.mission.h_max_m = 50.0;  // two height levels
    validate(s);
    return s;
}

}  // namespace

TEST_CASE("grid construction over the flight envelope") {
    const Scenario s = corner_scenario(1);  // flight area 1.4 x 1.4 km
    const Grid g = build_grid(s);
    CHECK(g.nx == 15);
    CHECK(g.ny == 15);
    CHECK(g.nz == 9);
    CHECK(g.n_states() == 15 * 15 * 9);
    CHECK(g.zs_m.front() == 40.0);
    CHECK(g.zs_m.back() == 120.0);

    // index <-> coordinates round trip
    const int st = g.index(3, 7, 2);
    CHECK(g.ix_of(st) == 3);
    CHECK(g.iy_of(st) == 7);
    CHECK(g.iz_of(st) == 2);
    const Vec3 p = g.position(st);
    CHECK(p.x == doctest::Approx(g.xs_km[3]));
    CHECK(p.y == doctest::Approx(g.ys_km[7]));
    CHECK(p.z_m() == doctest::Approx(60.0));
}

TEST_CASE("height levels honor the mission band") {
    Scenario s = corner_scenario(2);
    s.mission.h_min_m = 60.0;
    s.mission.h_max_m = 100.0;
    s.mission.start.z = 0.06;
    s.mission.finish.z = 0.06;
    const Grid g = build_grid(s);
    CHECK(g.nz == 5);
    CHECK(g.zs_m.front() == 60.0);
    CHECK(g.zs_m.back() == 100.0);
}

TEST_CASE("snapping picks the nearest state, lower index on ties") {
    const Scenario s = corner_scenario(1);
    const Grid g = build_grid(s);
    // Exactly on-grid
    CHECK(g.snap(g.position(g.index(4, 9, 3))) == g.index(4, 9, 3));
    // Slightly off
    Vec3 p = g.position(g.index(4, 9, 3));
    p.x += 0.02;
    p.z += 0.004;
    CHECK(g.snap(p) == g.index(4, 9, 3));
    // Exact midpoint between two x columns snaps down
    Vec3 mid = g.position(g.index(4, 9, 3));
    mid.x += 0.05;
    CHECK(g.snap(mid) == g.index(4, 9, 3));
}

TEST_CASE("action set: admissible displacements only, stay first, ascending") {
    const Scenario s = corner_scenario(1);
    const Grid g = build_grid(s);
    const ActionTable t = build_actions(g, 18.75, 8.0);  // reach 150 m

    CHECK(t.max_fanout == 81);  // 3x3 horizontal x 9 heights at an interior state

    const int mid = g.index(7, 7, 4);  // 80 m, deep interior
    const auto& succ = t.succ[std::size_t(mid)];
    REQUIRE(!succ.empty());
    CHECK(succ.front() == mid);  // stay comes first
    for (std::size_t i = 2; i < succ.size(); ++i) CHECK(succ[i - 1] < succ[i]);
    // From the band center the whole 3x3x9 block is admissible.
    CHECK(int(succ.size()) == 81);

    auto has_from = [&](int iz0, int dx, int dy, int dz_levels) {
        const int to = g.index(7 + dx, 7 + dy, iz0 + dz_levels);
        for (int v : t.succ[std::size_t(g.index(7, 7, iz0))])
            if (v == to) return true;
        return false;
    };
    // Diagonal plus 50 m climb is exactly 150 m: admissible.
    CHECK(has_from(0, 1, 1, 5));
    CHECK(has_from(8, -1, 1, -5));
    // Diagonal plus 60 m exceeds the reach.
    CHECK(!has_from(0, 1, 1, 6));
    CHECK(!has_from(8, 1, -1, -6));
    // Vertical-only move can span the whole band (80 m < 150 m).
    CHECK(has_from(0, 0, 0, 8));
    CHECK(has_from(8, 0, 0, -8));
    // Never more than one lattice cell horizontally.
    for (int v : succ) {
        CHECK(std::abs(g.ix_of(v) - 7) <= 1);
        CHECK(std::abs(g.iy_of(v) - 7) <= 1);
    }

    // Every listed displacement satisfies the speed constraint.  Measure in
    // the grid's own metric (cells times step, level height difference) --
    // the km round trip through position() adds representation noise.
    for (int from = 0; from < g.n_states(); from += 97)
        for (int to : t.succ[std::size_t(from)]) {
            const double dx = (g.ix_of(to) - g.ix_of(from)) * g.step_xy_m;
            const double dy = (g.iy_of(to) - g.iy_of(from)) * g.step_xy_m;
            const double dz = g.zs_m[std::size_t(g.iz_of(to))] -
                              g.zs_m[std::size_t(g.iz_of(from))];
            CHECK(dx * dx + dy * dy + dz * dz <= 150.0 * 150.0);
        }
}

TEST_CASE("backward sweep on a 3-state line") {
    const Grid g = line3();
    const ActionTable t = build_actions(g, 18.75, 8.0);
    const std::vector<double> rewards = {0.0, 5.0, 1.0};

    SUBCASE("loiters where the reward is") {
        const DpResult r = solve_dp_field(g, t, rewards, 0, 2, 3, 8.0);
        CHECK(r.trajectory.states == std::vector<int>{0, 1, 1, 2});
        CHECK(r.trajectory.total_value == 11.0);
        CHECK(r.table.value[0][0] == 11.0);
        CHECK(r.trajectory.time_avg_sum_rate == doctest::Approx(11.0 / 4.0));
    }
    SUBCASE("ties break toward staying put") {
        const std::vector<double> flat = {1.0, 1.0, 1.0};
        const DpResult r = solve_dp_field(g, t, flat, 0, 2, 3, 8.0);
        CHECK(r.trajectory.states == std::vector<int>{0, 0, 1, 2});
        CHECK(r.trajectory.total_value == 4.0);
    }
    SUBCASE("exact horizon leaves no slack") {
        const DpResult r = solve_dp_field(g, t, rewards, 0, 2, 2, 8.0);
        CHECK(r.trajectory.states == std::vector<int>{0, 1, 2});
        CHECK(r.trajectory.total_value == 6.0);
    }
    SUBCASE("unreachable horizon is infeasible") {
        CHECK_THROWS_AS(solve_dp_field(g, t, rewards, 0, 2, 1, 8.0), InfeasibleMission);
    }
}

TEST_CASE("bellman consistency at sampled cells") {
    const Scenario s = corner_scenario(5);
    const Grid g = build_grid(s);
    const ActionTable t = build_actions(g, s.mission.v_max_mps, 8.0);
    const std::vector<double> rewards = stage_rewards(s, g);
    const DpResult r = solve_dp(s, g, 30, 8.0, 1, rewards);

    for (int i : {0, 7, 15, 29})
        for (int st = 0; st < g.n_states(); st += 311) {
            const double v = r.table.value[std::size_t(i)][std::size_t(st)];
            if (!(v > -1e300)) continue;
            double best = -1e301;
            for (int nxt : t.succ[std::size_t(st)])
                best = std::max(best, r.table.value[std::size_t(i) + 1][std::size_t(nxt)]);
            CHECK(v == rewards[std::size_t(st)] + best);
        }
}

TEST_CASE("full-stack solve respects every mechanical constraint") {
    const Scenario s = corner_scenario(3);
    const Grid g = build_grid(s);
    const DpResult r = solve_dp(s, g, 30, 8.0);
    Trajectory t = r.trajectory;

    REQUIRE(t.states.size() == 31);
    REQUIRE(t.waypoints.size() == 31);
    CHECK(t.states.front() == g.snap(s.mission.start));
    CHECK(t.states.back() == g.snap(s.mission.finish));
    CHECK(t.snap_error_start_m < 1e-9);   // Table-style endpoints are on-grid
    CHECK(t.snap_error_finish_m < 1e-9);

    const double reach = s.mission.v_max_mps * 8.0;
    for (std::size_t i = 1; i < t.waypoints.size(); ++i)
        CHECK(dist3d_m(t.waypoints[i - 1], t.waypoints[i]) <= reach + 1e-9);
    for (const Vec3& p : t.waypoints) {
        CHECK(p.z_m() >= s.mission.h_min_m - 1e-9);
        CHECK(p.z_m() <= s.mission.h_max_m + 1e-9);
        CHECK(s.flight_area.contains(p.x, p.y));
    }

    // Reported value decomposes over the visited states.
    const std::vector<double> rewards = stage_rewards(s, g);
    double total = 0.0;
    for (int st : t.states) total += rewards[std::size_t(st)];
    CHECK(t.total_value == doctest::Approx(total).epsilon(1e-12));
    CHECK(t.time_avg_sum_rate == doctest::Approx(total / 31.0).epsilon(1e-12));

    annotate_trajectory(s, t);
    REQUIRE(t.step_sum_rate.size() == 31);
    REQUIRE(t.step_backhaul_sir_db.size() == 31);
    REQUIRE(t.step_ue_se.size() == 31);
    for (std::size_t i = 0; i < 31; ++i)
        CHECK(t.step_sum_rate[i] == rewards[std::size_t(t.states[i])]);
}

TEST_CASE("optimal value never drops when the horizon grows") {
    const Scenario s = corner_scenario(9);
    const Grid g = build_grid(s);
    const std::vector<double> rewards = stage_rewards(s, g);
    const double v20 = solve_dp(s, g, 20, 8.0, 1, rewards).trajectory.total_value;
    const double v25 = solve_dp(s, g, 25, 8.0, 1, rewards).trajectory.total_value;
    const double v30 = solve_dp(s, g, 30, 8.0, 1, rewards).trajectory.total_value;
    CHECK(v20 <= v25);
    CHECK(v25 <= v30);
}

TEST_CASE("dp agrees with exhaustive search on a tiny instance") {
    const Scenario s = tiny_scenario();
    const Grid g = build_grid(s);
    CHECK(g.n_states() == 3 * 3 * 2);

    const DpResult dp = solve_dp(s, g, 4, 8.0);
    const DpResult es = exhaustive_search(s, g, 4, 8.0);
    CHECK(dp.trajectory.total_value == es.trajectory.total_value);  // bitwise
    CHECK(dp.trajectory.states == es.trajectory.states);

    // Oversized enumeration trips the budget guard.
    CHECK_THROWS_AS(exhaustive_search(s, g, 40, 8.0), std::length_error);
}

TEST_CASE("2d solve pins the cruise to one level") {
    const Scenario s = corner_scenario(4);
    const Grid g = build_grid(s);
    const std::vector<double> rewards3d = stage_rewards(s, g);

    const DpResult sliced = solve_dp_2d(s, g, 30, 80.0, 8.0, 1, rewards3d);
    const DpResult fresh = solve_dp_2d(s, g, 30, 80.0, 8.0);
    CHECK(sliced.trajectory.total_value == fresh.trajectory.total_value);
    CHECK(sliced.trajectory.states == fresh.trajectory.states);

    // The mission endpoints stay at 40 m; everything in between cruises at
    // the fixed 80 m level.
    const auto& st = sliced.trajectory.states;
    REQUIRE(st.size() == 31);
    CHECK(g.iz_of(st.front()) == 0);
    CHECK(g.iz_of(st.back()) == 0);
    CHECK(st.front() == g.snap(s.mission.start));
    CHECK(st.back() == g.snap(s.mission.finish));
    for (std::size_t i = 1; i + 1 < st.size(); ++i) CHECK(g.iz_of(st[i]) == 4);
    CHECK(sliced.trajectory.snap_error_start_m == 0.0);

    // A 2D trajectory is 3D-feasible, so the 3D optimum dominates every
    // fixed height.
    const double v3d = solve_dp(s, g, 30, 8.0, 1, rewards3d).trajectory.total_value;
    CHECK(v3d >= sliced.trajectory.total_value);
    for (double h : {40.0, 120.0})
        CHECK(v3d >= solve_dp_2d(s, g, 30, h, 8.0, 1, rewards3d).trajectory.total_value);

    CHECK_THROWS_AS(solve_dp_2d(s, g, 30, 85.0, 8.0), std::invalid_argument);
}

TEST_CASE("2d solve equals a 3d solve when the mission sits on the level") {
    Scenario pinned = corner_scenario(4);
    pinned.mission.start.z = 0.08;
    pinned.mission.finish.z = 0.08;
    const Grid g = build_grid(pinned);
    const DpResult via2d = solve_dp_2d(pinned, g, 30, 80.0, 8.0);

    Scenario banded = pinned;
    banded.mission.h_min_m = 80.0;
    banded.mission.h_max_m = 80.0;
    const Grid flat = build_grid(banded);
    REQUIRE(flat.nz == 1);
    const DpResult direct = solve_dp(banded, flat, 30, 8.0);

    CHECK(direct.trajectory.total_value == via2d.trajectory.total_value);  // bitwise
    REQUIRE(direct.trajectory.states.size() == via2d.trajectory.states.size());
    const int plane = g.nx * g.ny;  // flat index + level offset = 3d index
    for (std::size_t i = 0; i < via2d.trajectory.states.size(); ++i)
        CHECK(via2d.trajectory.states[i] == 4 * plane + direct.trajectory.states[i]);
}

TEST_CASE("fewest-moves bfs") {
    const Grid g = line3();
    const ActionTable t = build_actions(g, 18.75, 8.0);
    CHECK(min_steps(t, g.n_states(), 0, 0) == 0);
    CHECK(min_steps(t, g.n_states(), 0, 2) == 2);
    CHECK(min_steps(t, g.n_states(), 2, 0) == 2);

    const Scenario s = corner_scenario(1);
    const Grid big = build_grid(s);
    const ActionTable bt = build_actions(big, 18.75, 8.0);
    CHECK(min_steps(bt, big.n_states(), big.index(0, 0, 8), big.index(14, 14, 8)) == 14);
}

TEST_CASE("proposition bound and cuboid verdict") {
    CHECK(proposition_time_bound(1200.0, 1200.0, 80.0, 18.75) ==
          doctest::Approx(128.28412909544882).epsilon(1e-13));

    const Scenario s = corner_scenario(6);
    const Grid g = build_grid(s);  // 1.4 km square, 80 m tall

    SUBCASE("generous horizon: peak reached, hover only there, no dawdling") {
        for (int peak : {g.index(7, 3, 8), g.index(0, 0, 0), g.index(14, 14, 4)}) {
            const PropositionVerdict v = check_proposition_cuboid(g, peak, 18.75, 400.0, 8.0);
            CHECK(v.bound_satisfied);
            CHECK(v.peak_visited);
            CHECK(v.hovers_only_at_peak);
            CHECK(v.travel_is_minimal);
            CHECK(v.n_hover_steps + v.n_move_steps == 50);
        }
    }
    SUBCASE("minimal horizon with the peak on the corner-to-corner diagonal") {
        Scenario one = corner_scenario(6);
        one.mission.h_min_m = 120.0;
        one.mission.h_max_m = 120.0;
        one.mission.start.z = 0.12;
        one.mission.finish.z = 0.12;
        const Grid flat = build_grid(one);
        REQUIRE(flat.nz == 1);
        // 14 diagonal moves, 8 s each: T = 112 s is under the cuboid bound but
        // the peak lies on the only shortest path.
        const PropositionVerdict v =
            check_proposition_cuboid(flat, flat.index(7, 7, 0), 18.75, 112.0, 8.0);
        CHECK(!v.bound_satisfied);
        CHECK(v.peak_visited);
        CHECK(v.n_hover_steps == 0);
        CHECK(v.travel_is_minimal);
    }
}
