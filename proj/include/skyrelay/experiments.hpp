#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skyrelay/planner.hpp"

namespace skyrelay {

enum class StudyKind { kSeGain, kOutage, kFifthPercentile, kDowntiltSweep, kRuntimeScaling };

/// One trajectory discipline to evaluate on a realization.
struct Mode {
    enum class Kind { kThreeD, kTwoD, kNoUav };
    Kind kind = Kind::kThreeD;
    double height_m = 0.0;  // TwoD only

    std::string label() const;
    static Mode parse(const std::string& text);  // "3d" | "2d@80" | "no_uav"
};

struct StudySpec {
    StudyKind kind = StudyKind::kSeGain;
    std::vector<double> mbs_densities = {2.0};
    double ue_density = 20.0;
    int realizations = 100;
    std::vector<double> durations_s = {240.0};
    std::vector<Mode> modes;
    std::uint64_t base_seed = 1;  // realization r uses seed base_seed + r
    double area_km = 1.0;         // network area side length
    double delta_s = 8.0;
    double qos_threshold = 0.05;
    std::vector<double> downtilts_deg = {-2.0, 2.0, 6.0, 10.0};  // downtilt sweep
    std::vector<double> downtilt_area_sizes_km = {1.2, 2.2};
    int jobs = 1;
};

/// Per-realization record; kept so aggregates stay reproducible and
/// order-independent.
struct RealizationMetrics {
    bool feasible = true;
    double per_ue_se = 0.0;   // time-averaged, bps/Hz/UE
    double outage = 0.0;      // probability
    double fifth_pse = 0.0;   // bps/Hz
    double objective = 0.0;   // trajectory total value (sum-rate sum)
};

struct StudyRow {
    double density = 0.0;     // lambda_mbs
    double duration_s = 0.0;
    std::string mode;
    std::string metric;       // "per_ue_se" | "se_gain_pct" | "outage" | ...
    double mean = 0.0;
    double std_error = 0.0;
    int n = 0;
    int infeasible = 0;
    double extra = 0.0;       // downtilt angle where relevant
    double extra2 = 0.0;      // area size where relevant
};

struct StudyResult {
    std::vector<StudyRow> rows;
    std::vector<std::uint64_t> seeds;
    double wall_time_s = 0.0;
    // Raw per-(density, duration, mode, realization) metrics, for paired
    // comparisons in tests.
    struct Cell {
        double density;
        double duration_s;
        std::string mode;
        std::vector<RealizationMetrics> per_realization;
    };
    std::vector<Cell> cells;

    const Cell* find(double density, const std::string& mode,
                     double duration_s = 240.0) const;
};

StudyResult run_study(const StudySpec& spec);

/// Wall-times of the DP sweep for varying horizon length, grid resolution and
/// height-level count.  Rewards are synthetic so only the sweep is timed.
struct RuntimeScalingSpec {
    std::vector<double> grid_steps_m = {100.0};
    std::vector<double> durations_s = {80, 160, 240, 320};
    std::vector<int> height_counts = {2, 3, 4, 5, 6, 7};
    double area_km = 1.2;
    double delta_s = 8.0;
    int repeats = 3;  // min-of-k timing
};

struct RuntimeScalingResult {
    struct Row {
        double grid_step_m;
        int n_steps;
        int n_states;
        int height_count;
        double wall_s;
    };
    std::vector<Row> vs_horizon;   // per (grid step, N)
    std::vector<Row> vs_heights;   // per height count
    double slope_vs_n = 0.0;       // fitted seconds per step
    double r2_vs_n = 0.0;
};

RuntimeScalingResult runtime_scaling(const RuntimeScalingSpec& spec);

/// Least-squares line fit; returns {slope, intercept, r_squared}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace skyrelay
