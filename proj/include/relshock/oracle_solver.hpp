#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "relshock/coordinate_map.hpp"
#include "relshock/seed_data.hpp"

namespace relshock {

struct OracleOptions {
    double dx = 1e-2;
    double cfl = 0.45;
    std::string scheme = "upwind"; // upwind | minmod
    double margin = 0.5;           // domain padding beyond the causal reach
    // stop with ResolutionExhausted once max|dR+/dx| > 1/(guard * dx)
    double resolution_guard = 10.0;
    int grad_stride = 1; // monitor the gradient every this many steps
    // overrides for symmetry and custom-data studies: explicit (r+, r-)
    // initial fields and a pinned domain instead of the causal default
    std::function<std::pair<double, double>(double x)> initial_fields;
    double x_lo_override = std::numeric_limits<double>::quiet_NaN();
    double x_hi_override = std::numeric_limits<double>::quiet_NaN();
};

// Rectangular-coordinate evolution of the two-speed invariant transport
// system with sign-resolved upwind (or minmod-limited) stencils and Heun
// time stepping. Serves as the brute-force cross-check of the closed forms.
struct RectangularOracleRun {
    std::vector<double> x;       // node coordinates
    std::vector<double> r_plus;  // fields at t_final
    std::vector<double> r_minus;
    double dx = 0.0;
    double dt = 0.0;
    double t_final = 0.0;
    double initial_max_grad = 0.0;
    std::vector<std::pair<double, double>> grad_history; // (t, max|d r+/dx|)
    bool resolution_exhausted = false;
    double t_resolution_exhausted = 0.0;
};

// Advance to t_end; throws ResolutionExhausted if the monitored gradient
// leaves the resolvable range before t_end.
RectangularOracleRun evolve(const InitialData& data, const OracleOptions& opt,
                            double t_end);

// Advance until every threshold in grad_thresholds (absolute gradient
// values) has been crossed, or the resolution guard trips; never throws on
// the guard, the flag is set instead. Crossing times are linearly
// interpolated between monitoring samples.
struct ThresholdCrossings {
    RectangularOracleRun run;
    std::vector<double> thresholds;
    std::vector<double> times; // NaN where never crossed
};
ThresholdCrossings evolve_until_thresholds(const InitialData& data,
                                           const OracleOptions& opt,
                                           const std::vector<double>& grad_thresholds,
                                           double t_cap);

struct CompareResult {
    double linf = 0.0;
    double l1 = 0.0; // dx-weighted
    int excluded = 0;
};
// Push the geometric solution through the coordinate map onto the oracle
// mesh at the run's final time and measure the difference.
CompareResult compare_with_geometric(const RectangularOracleRun& run,
                                     const GeometricSolution& sol,
                                     const CoordinateMap& map);

struct LadderOptions {
    double dx_finest = 0.0;    // default: support/8192
    int levels = 4;            // dx_finest * 2^k, k = levels-1 .. 0
    double cfl = 0.45;
    // the second-order variant; the first-order scheme's numerical diffusion
    // caps the discrete gradient below the upper thresholds at these meshes
    std::string scheme = "minmod";
    std::vector<double> threshold_factors = {10.0, 20.0, 40.0, 80.0};
    double t_cap_factor = 1.2; // integrate at most to t_cap_factor * T_shock
    double monotone_slack = 1e-3;
};

struct BlowupEstimate {
    double t_estimate = 0.0;
    double uncertainty = 0.0;
    struct Level {
        double dx = 0.0;
        double t_extrapolated = 0.0;
        std::vector<double> thresholds;
        std::vector<double> crossing_times;
    };
    std::vector<Level> levels; // coarse to fine
};
BlowupEstimate estimate_blowup_time(const InitialData& data, const LadderOptions& opt);

} // namespace relshock
