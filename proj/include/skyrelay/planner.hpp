#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skyrelay/radio.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct GridSpec {
    double step_xy_m = 100.0;
    std::vector<double> heights_m = {40, 50, 60, 70, 80, 90, 100, 110, 120};
};

/// Discretized flight volume.  States are numbered (iz * ny + iy) * nx + ix.
struct Grid {
    Rect bounds;  // km
    double step_xy_m = 100.0;
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> xs_km, ys_km;
    std::vector<double> zs_m;

    int n_states() const { return nx * ny * nz; }
    int index(int ix, int iy, int iz) const { return (iz * ny + iy) * nx + ix; }
    int ix_of(int s) const { return s % nx; }
    int iy_of(int s) const { return (s / nx) % ny; }
    int iz_of(int s) const { return s / (nx * ny); }
    Vec3 position(int s) const {
        return {xs_km[ix_of(s)], ys_km[iy_of(s)], zs_m[iz_of(s)] / 1000.0};
    }
    /// Nearest grid state to a point (km).
    int snap(const Vec3& p) const;
};

/// Builds the grid over the scenario's flight area, clipping the height list
/// to the mission's [h_min, h_max] band.  Throws InfeasibleMission if an
/// endpoint falls outside the flight area.
Grid build_grid(const Scenario& s, const GridSpec& spec = {});

/// Admissible successors per state: stay, or a 3x3 horizontal neighbor at any
/// height level, with total displacement at most v_max * delta.  Stay comes
/// first, then every other successor in ascending state index; the DP's
/// deterministic tie-break relies on this order.
struct ActionTable {
    std::vector<std::vector<std::int32_t>> succ;
    int max_fanout = 0;
};

ActionTable build_actions(const Grid& g, double v_max_mps, double delta_s);

/// Network sum-rate with the UAV parked at each grid state.  The field is
/// time-invariant (UEs are static), so the planner memoizes it once.
std::vector<double> stage_rewards(const Scenario& s, const Grid& g, int jobs = 1);

/// Value and argmax tables of the backward sweep.  value[i][s] is the best
/// total reward collectible from state s at step i (the reward at s itself
/// included) while reaching the finish at step N; unreachable pairs hold
/// -inf.  next[i][s] is the chosen successor.
struct ValueTable {
    int n_steps = 0;  // N
    std::vector<std::vector<double>> value;         // [0..N][state]
    std::vector<std::vector<std::int32_t>> next;    // [0..N-1][state]
};

struct Trajectory {
    std::vector<int> states;               // N+1 entries
    std::vector<Vec3> waypoints;           // km
    double delta_s = 8.0;
    double total_value = 0.0;              // sum of stage rewards over waypoints
    double time_avg_sum_rate = 0.0;        // total_value / (N+1)
    double snap_error_start_m = 0.0;
    double snap_error_finish_m = 0.0;
    // Filled by annotate_trajectory:
    std::vector<double> step_sum_rate;
    std::vector<double> step_backhaul_sir_db;
    std::vector<std::vector<double>> step_ue_se;  // [step][ue]
};

struct DpResult {
    ValueTable table;
    Trajectory trajectory;
};

/// Finite-horizon backward DP over an arbitrary reward field.  Every
/// feasible trajectory's value is the sum of rewards over its N+1 states;
/// ties break toward the stay action, then the smallest successor index.
/// Throws InfeasibleMission when no path from start reaches finish in N
/// steps.
DpResult solve_dp_field(const Grid& g, const ActionTable& actions,
                        std::span<const double> rewards, int start_state,
                        int finish_state, int n_steps, double delta_s);

/// Full-stack solve: builds the reward field from the scenario and runs the
/// sweep, unless a precomputed field is passed in.
DpResult solve_dp(const Scenario& s, const Grid& g, int n_steps, double delta_s = 8.0,
                  int jobs = 1, std::span<const double> rewards3d = {});

/// Same machinery with the height dimension pinned: a one-level grid at
/// fixed_height_m, mission endpoints snapped onto it.  fixed_height_m must be
/// one of the grid's height levels.
DpResult solve_dp_2d(const Scenario& s, const Grid& g, int n_steps, double fixed_height_m,
                     double delta_s = 8.0, int jobs = 1,
                     std::span<const double> rewards3d = {});

/// Exhaustive enumeration of feasible action sequences; exact, for tiny
/// instances only.  Throws std::length_error when the rough bound
/// fanout^N exceeds the budget.
DpResult exhaustive_search_field(const Grid& g, const ActionTable& actions,
                                 std::span<const double> rewards, int start_state,
                                 int finish_state, int n_steps, double delta_s,
                                 double budget = 1e8);

DpResult exhaustive_search(const Scenario& s, const Grid& g, int n_steps,
                           double delta_s = 8.0, double budget = 1e8);

/// Attaches per-step radio metrics (sum-rate, backhaul SIR, per-UE SE) to a
/// solved trajectory.
void annotate_trajectory(const Scenario& s, Trajectory& t,
                         const DirectPowerCache* cache = nullptr);

/// Fewest moves between two states under the action table (backward BFS);
/// -1 if unreachable.
int min_steps(const ActionTable& actions, int n_states, int from, int to);

/// Mission time that guarantees any interior point of an l x w x h cuboid
/// can be visited between opposite top corners.
double proposition_time_bound(double l_m, double w_m, double h_m, double v_max_mps);

struct PropositionVerdict {
    bool bound_satisfied = false;
    bool peak_visited = false;
    bool hovers_only_at_peak = false;
    bool travel_is_minimal = false;  // every moving step makes maximal progress
    int n_hover_steps = 0;
    int n_move_steps = 0;
    int min_travel_steps = 0;
};

/// Runs the DP on a synthetic single-peak reward field over the cuboid grid
/// (start and finish at opposite top corners) and records whether the
/// trajectory matches the hover-at-the-peak structure.
PropositionVerdict check_proposition_cuboid(const Grid& g, int peak_state,
                                            double v_max_mps, double total_time_s,
                                            double delta_s);

}  // namespace skyrelay
