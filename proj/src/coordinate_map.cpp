#include "relshock/coordinate_map.hpp"

#include <algorithm>
#include <cmath>

#include "relshock/errors.hpp"
#include "relshock/numerics.hpp"

namespace relshock {

UpsilonSlice::UpsilonSlice(const GeometricSolution& sol, double t, double U_lo,
                           double U_hi, int n)
    : sol_(&sol), t_(t) {
    if (!(U_hi > U_lo) || n < 2)
        fail(ErrorKind::out_of_range, "inverse slice: bad U range");
    us_.resize(n);
    xs_.resize(n);
    for (int i = 0; i < n; ++i) {
        us_[i] = U_lo + (U_hi - U_lo) * i / (n - 1);
        xs_[i] = -us_[i] + t * sol.data().L1(us_[i]);
    }
    for (int i = 0; i + 1 < n; ++i)
        if (!(xs_[i + 1] < xs_[i]))
            fail(ErrorKind::not_in_image,
                 "inverse slice: x1 is not strictly decreasing on the requested range");
}

bool UpsilonSlice::contains(double x1) const {
    return x1 <= xs_.front() && x1 >= xs_.back();
}

UpsilonSlice::Result UpsilonSlice::invert(double x1) const {
    if (!contains(x1))
        fail(ErrorKind::not_in_image, "inverse slice: x1 outside the slice image");
    // xs_ decreasing: bracket by binary search
    std::size_t lo = 0, hi = us_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (xs_[mid] >= x1) lo = mid; else hi = mid;
    }
    double a = us_[lo], b = us_[hi];
    double u = a + (b - a) * (xs_[lo] - x1) / (xs_[lo] - xs_[hi]);
    const auto& d = sol_->data();
    bool near_singular = false;
    for (int it = 0; it < 60; ++it) {
        const double f = (-u + t_ * d.L1(u)) - x1;
        const double jac = -(1.0 + t_ * d.G(u)); // d x1/dU
        if (std::abs(jac) < 1e-8) near_singular = true;
        if (f > 0.0) a = u; else b = u; // f decreasing in U
        double un = (jac != 0.0) ? u - f / jac : 0.5 * (a + b);
        if (!(un >= a && un <= b)) un = 0.5 * (a + b);
        if (std::abs(un - u) <= 1e-12 * std::max(1.0, std::abs(un))) {
            u = un;
            break;
        }
        u = un;
    }
    const double resid = std::abs((-u + t_ * d.L1(u)) - x1);
    if (resid > 1e-10 * (1.0 + std::abs(x1)))
        fail(ErrorKind::not_in_image, "inverse slice: residual target missed");
    return {u, near_singular};
}

CoordinateMap::CoordinateMap(const GeometricSolution& sol)
    : sol_(std::make_shared<const GeometricSolution>(sol)) {
    const auto& d = sol_->data();
    wide_lo_ = d.support_lo() - 1.0;
    wide_hi_ = d.support_hi() + 1.0;
}

double CoordinateMap::x1(double t, double U) const {
    return -U + t * sol_->data().L1(U);
}

double CoordinateMap::jacobian_det(double t, double U) const {
    return -(1.0 + t * sol_->data().G(U));
}

double CoordinateMap::jacobian_det_mu_route(double t, double U) const {
    return -sol_->c_over_n(U) * sol_->mu(t, U);
}

UpsilonSlice CoordinateMap::make_inverse_slice(double t, double U_lo, double U_hi,
                                               int n) const {
    return UpsilonSlice(*sol_, t, U_lo, U_hi, n);
}

UpsilonSlice CoordinateMap::make_inverse_slice(double t) const {
    // signal speeds stay below 1, so +-|t| around the data range covers every
    // reachable column
    return UpsilonSlice(*sol_, t, wide_lo_ - std::abs(t), wide_hi_ + std::abs(t), 4097);
}

CoordinateMap::InverseResult CoordinateMap::upsilon_inverse(double t, double x) const {
    const double T = sol_->T_shock();
    if (t < T * (1.0 - 1e-12)) {
        const auto r = make_inverse_slice(t).invert(x);
        return {r.U, r.near_singular};
    }
    if (!boundary_)
        fail(ErrorKind::not_in_image,
             "inversion at or beyond the blowup time needs an attached boundary");
    // Restrict to the development slices: U below the singular curve on the
    // left of the crease, below the horizon on the right.
    const double c0 = sol_->U_center();
    const double Ur = sol_->U_rad();
    const MghdBoundary& b = *boundary_;
    // left interval [c0 - Ur, U_a] with t_sing(U_a) = t
    std::optional<UpsilonSlice> left, right;
    if (b.t_sing(c0 - Ur) > t) {
        const double Ua = num::find_root_bisect(
            [&](double u) { return b.t_sing(u) - t; }, c0 - Ur, c0, 1e-13);
        if (Ua - (c0 - Ur) > 1e-6 * Ur)
            left.emplace(*sol_, t, c0 - Ur, Ua - 1e-9 * Ur, 2049);
    }
    const double tch_end = b.t_ch(c0 + Ur);
    if (tch_end >= t) {
        const double Ub = num::find_root_bisect(
            [&](double u) { return b.t_ch(u) - t; }, c0, c0 + Ur, 1e-13);
        if ((c0 + Ur) - Ub > 1e-6 * Ur)
            right.emplace(*sol_, t, Ub + 1e-9 * Ur, c0 + Ur, 2049);
    }
    for (const auto& slice : {std::cref(left), std::cref(right)}) {
        if (slice.get() && slice.get()->contains(x)) {
            const auto r = slice.get()->invert(x);
            return {r.U, r.near_singular};
        }
    }
    fail(ErrorKind::not_in_image, "point is not in the image of the development");
}

InjectivityReport CoordinateMap::injectivity_audit(const MghdBoundary& boundary,
                                                   int nt, int nu, int workers) const {
    InjectivityReport rep;
    rep.rows = nt;
    rep.cols = nu;
    const auto& d = sol_->data();
    const double c0 = d.U_center();
    const double Ur = sol_->U_rad();
    const double T = sol_->T_shock();

    auto t_top = [&](double U) {
        return (U <= c0) ? boundary.t_sing_unrestricted(U) : boundary.t_ch(U);
    };
    double t_max = 0.0;
    for (int j = 0; j <= nu; ++j)
        t_max = std::max(t_max, t_top(c0 - Ur + 2.0 * Ur * j / nu));

    // domain diameter in (t, x1) for the collision tolerance
    const double x_left = x1(0.0, c0 + Ur), x_right = x1(0.0, c0 - Ur);
    const double diameter = std::hypot(t_max, x_right - x_left);
    rep.collision_tol = 1e-9 * diameter;
    rep.min_gap = 1e300;

    // (i)+(iii): per-row monotone decrease and minimum same-row separation;
    // rows are independent, so they fan out across the workers
    struct RowAcc {
        bool monotone = true;
        long collisions = 0;
        double min_gap = 1e300;
    };
    std::vector<RowAcc> acc(nt + 1);
    num::parallel_for(nt + 1, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double t = t_max * (double)i / nt;
            RowAcc& a = acc[i];
            double prev_x = 0.0;
            bool have_prev = false;
            for (int j = 0; j <= nu; ++j) {
                const double U = c0 - Ur + 2.0 * Ur * j / nu;
                if (t > t_top(U)) {
                    have_prev = false;
                    continue;
                }
                const double x = x1(t, U);
                if (have_prev) {
                    const double gap = prev_x - x; // must be positive
                    if (gap <= 0.0) a.monotone = false;
                    if (gap <= rep.collision_tol) ++a.collisions;
                    a.min_gap = std::min(a.min_gap, gap);
                }
                prev_x = x;
                have_prev = true;
            }
        }
    });
    for (const RowAcc& a : acc) {
        rep.rows_monotone = rep.rows_monotone && a.monotone;
        rep.collisions += a.collisions;
        rep.min_gap = std::min(rep.min_gap, a.min_gap);
    }

    // (ii): x1 strictly decreasing along the top boundary, with the stated
    // one-sided signs of its derivative
    double prev_top = 0.0;
    bool have_top = false;
    for (int j = 0; j <= nu; ++j) {
        const double U = c0 - Ur + 2.0 * Ur * j / nu;
        const double x = x1(t_top(U), U);
        if (have_top && !(x < prev_top)) rep.top_monotone = false;
        prev_top = x;
        have_top = true;
    }
    const double hU = 1e-4 * Ur;
    const int m = 48;
    for (int k = 1; k <= m; ++k) {
        // strictly inside the singular-curve side, away from both endpoints
        const double U = c0 - Ur + (Ur - 4 * hU) * k / (m + 1);
        const double der = (x1(boundary.t_sing_unrestricted(U + hU), U + hU)
                            - x1(boundary.t_sing_unrestricted(U - hU), U - hU)) / (2 * hU);
        if (!(der < 0.0)) rep.sing_curve_sign_ok = false;
    }
    for (int k = 1; k <= m; ++k) {
        // horizon side, starting away from the crease where the derivative
        // vanishes quadratically
        const double U = c0 + 0.05 * Ur + (0.95 * Ur - 4 * hU) * k / (m + 1);
        const double der = (x1(boundary.t_ch(U + hU), U + hU)
                            - x1(boundary.t_ch(U - hU), U - hU)) / (2 * hU);
        if (!(der < 0.0)) rep.horizon_sign_ok = false;
    }

    (void)T;
    rep.pass = rep.rows_monotone && rep.top_monotone && rep.collisions == 0
            && rep.sing_curve_sign_ok && rep.horizon_sign_ok;
    return rep;
}

} // namespace relshock
