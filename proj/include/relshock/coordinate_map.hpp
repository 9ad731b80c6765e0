#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "relshock/geo_solution.hpp"
#include "relshock/mghd_boundary.hpp"

namespace relshock {

// Per-time monotone inversion table: 4097 U-samples of x1(t, .) refined by
// bisection + Newton (dx1/dU = -(c/n) mu is available analytically).
class UpsilonSlice {
public:
    UpsilonSlice(const GeometricSolution& sol, double t, double U_lo, double U_hi,
                 int n = 4097);
    double t() const { return t_; }
    bool contains(double x1) const;
    struct Result {
        double U = 0.0;
        bool near_singular = false;
    };
    Result invert(double x1) const;

private:
    const GeometricSolution* sol_;
    double t_;
    std::vector<double> us_, xs_; // xs strictly decreasing in U
};

struct InjectivityReport {
    bool pass = false;
    bool rows_monotone = true;
    bool top_monotone = true;
    bool sing_curve_sign_ok = true; // d x1/dU ~ sign(U) along the singular curve
    bool horizon_sign_ok = true;    // d x1/dU < 0 (quadratic vanishing) along the horizon
    double min_gap = 0.0;           // smallest same-row image separation
    double collision_tol = 0.0;
    long collisions = 0;
    int rows = 0, cols = 0;
};

// Change of variables (t, U) -> (t, x1) with x1 = -U + t L1(U). Both PDE
// characterizations (d_t x1 = L1, d_U x1 = -(1 + tG)) hold for this closed
// form and are asserted as invariants in the tests.
class CoordinateMap {
public:
    explicit CoordinateMap(const GeometricSolution& sol);

    const GeometricSolution& solution() const { return *sol_; }
    void attach_boundary(std::shared_ptr<const MghdBoundary> b) { boundary_ = std::move(b); }

    double x1(double t, double U) const;
    std::array<double, 2> upsilon(double t, double U) const { return {t, x1(t, U)}; }

    double jacobian_det(double t, double U) const;          // -(1 + tG)
    double jacobian_det_mu_route(double t, double U) const; // -(c/n) mu

    struct InverseResult {
        double U = 0.0;
        bool near_singular = false;
    };
    // Unique U with x1(t, U) = x. For t < T_shock the map is inverted over
    // the full data range; for t >= T_shock a boundary must be attached and
    // the search is restricted to the development slices.
    InverseResult upsilon_inverse(double t, double x1) const;

    UpsilonSlice make_inverse_slice(double t, double U_lo, double U_hi,
                                    int n = 4097) const;
    UpsilonSlice make_inverse_slice(double t) const; // full data range

    InjectivityReport injectivity_audit(const MghdBoundary& boundary, int nt = 200,
                                        int nu = 200, int workers = 1) const;

    double U_wide_lo() const { return wide_lo_; }
    double U_wide_hi() const { return wide_hi_; }

private:
    std::shared_ptr<const GeometricSolution> sol_;
    std::shared_ptr<const MghdBoundary> boundary_;
    double wide_lo_ = 0.0, wide_hi_ = 0.0;
};

} // namespace relshock
