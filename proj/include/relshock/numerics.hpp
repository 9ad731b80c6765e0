#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace relshock::num {

// ---------------------------------------------------------------------------
// Quadrature: classical fixed-step RK4 on y' = f(x) with step halving until
// successive Richardson estimates agree to rel_tol.
// ---------------------------------------------------------------------------
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_floor = 1e-300);

// RK4 for y' = f(x, y), fixed number of steps, returns y(b).
double ode_rk4(const std::function<double(double, double)>& f, double a,
               double ya, double b, int steps);

// RK4 with per-node dense record, halving until the two finest solutions
// agree to tol at shared nodes. Returns node coordinates, values, and
// derivatives (for cubic-Hermite interpolation).
struct OdeTable {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> dy;
    double value(double xq) const;      // cubic Hermite, clamped to range
    double derivative(double xq) const; // derivative of the Hermite patch
};
OdeTable ode_rk4_dense(const std::function<double(double, double)>& f,
                       double a, double ya, double b, double h0,
                       double tol, int max_halvings = 8);

// ---------------------------------------------------------------------------
// Root finding: bracketed bisection refined by Newton. f(lo) and f(hi) must
// bracket a sign change. rel_tol is relative to the root magnitude.
// ---------------------------------------------------------------------------
double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& df, double lo, double hi,
                 double rel_tol = 1e-12);

// Bisection-only variant for when no derivative is available.
double find_root_bisect(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol = 1e-12);

// ---------------------------------------------------------------------------
// Finite differences and least squares.
// ---------------------------------------------------------------------------
// Central difference of order 2*m (m=1..3 -> orders 2,4,6).
double central_diff(const std::function<double(double)>& f, double x, double h,
                    int order = 6);
double central_diff2(const std::function<double(double)>& f, double x, double h);

// Least squares fit of y = sum_k coef[k] x^k, degree deg.
std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int deg);

// Slope of log|y| vs log|x| over the given samples (x, y > 0).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// parallel_for: chunked index loop over [0, n). Results must be written by
// index; chunk boundaries are deterministic.
// ---------------------------------------------------------------------------
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn);

} // namespace relshock::num
