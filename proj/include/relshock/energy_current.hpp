#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "relshock/eos.hpp"
#include "relshock/tensor4.hpp"

namespace relshock {

// Full solution array (h, u^0, u^1, u^2, u^3, s) with cached c and q.
struct State4 {
    double h = 0.0;
    Vec4 u{1.0, 0.0, 0.0, 0.0};
    double s = 0.0;
    double H = 1.0;
    double c = 0.0;
    double q = 0.0;

    static State4 make(double h, double u1, double u2, double u3, double s,
                       const Eos& eos);
};

// variation array (h_dot, u_dot^0..3, s_dot); unconstrained
using Var6 = std::array<double, 6>;

// The eight-term energy current contracted from the solution state, the
// multipliers f1 and f2, and a variation.
Vec4 energy_current(const State4& V, double f1, double f2, const Var6& vdot);

// xi_a J^a as a symmetric 6x6 quadratic form in the variation, extracted by
// evaluating on basis variations and polarizing.
Eigen::Matrix<double, 6, 6> energy_bilinear_form(const State4& V, double f1, double f2,
                                                 const Vec4& xi);

// Hypothesis check: past-directed h-timelike one-form.
bool xi_is_past_timelike(const State4& V, const Vec4& xi);

struct KBounds {
    double h_abs = 0.2;     // |h| <= h_abs
    double u_abs = 0.3;     // |u^i| <= u_abs
    double s_abs = 0.2;     // |s| <= s_abs (thermo states only)
    double xi_spatial = 0.5; // |xi_i| <= xi_spatial * xi_0
};

struct PositivityScan {
    double min_eigenvalue = 0.0;
    double min_reduced_eigenvalue = 0.0; // f1 = f2 = 0, restricted variations
    double f_threshold = 0.0;            // smallest doubling power that works
    double xi_par_min = 0.0, xi_par_max = 0.0;
    int samples = 0;
};

// Random (state, xi) pairs in a compact subset of the hyperbolic regime;
// for each pair a doubling search on f1 = f2 until the 6x6 form is positive
// definite with margin, plus the reduced f=0 positivity on the subspace
// {s_dot = 0, u_k u_dot^k = 0}.
PositivityScan positivity_scan(const Eos& eos, const KBounds& K, int n_samples,
                               std::uint64_t seed, double margin = 1e-6);

// Smallest f (doubling from 1) with min eigenvalue > margin for one pair.
double threshold_search(const State4& V, const Vec4& xi, double margin = 1e-6);

// Minimum of xi.J over {s_dot = 0, u_k u_dot^k = 0} variations, normalized by
// h_dot^2 + u_dot_k u_dot^k, at f1 = f2 = 0.
double reduced_min_eigenvalue(const State4& V, const Vec4& xi);

} // namespace relshock
