#include "relshock/mghd_boundary.hpp"

#include <cmath>
#include <vector>

#include "relshock/errors.hpp"

namespace relshock {

const char* to_string(Region r) {
    switch (r) {
        case Region::m_sing: return "M_sing";
        case Region::m_reg: return "M_reg";
        case Region::singular_boundary: return "singular_boundary";
        case Region::cauchy_horizon: return "cauchy_horizon";
        case Region::crease: return "crease";
        case Region::exterior: return "exterior";
    }
    return "unknown";
}

namespace {

struct CreaseSearch {
    const GeometricSolution& sol;
    double LXmu(double U) const {
        const InitialData& d = sol.data();
        return d.n_over_c(U) * d.dG(U) + d.d_n_over_c(U) * d.G(U);
    }
};

} // namespace

MghdBoundary::MghdBoundary(const GeometricSolution& sol, HorizonOptions opt)
    : sol_(std::make_shared<const GeometricSolution>(sol)), opt_(opt) {
    const InitialData& d = sol_->data();
    const double c0 = d.U_center();
    const double Ur = sol_->U_rad();
    const double T = d.T_shock();

    // ---- crease: simultaneous zero of (mu, Xmu) by bracketing + 2D Newton
    const CreaseSearch cs{*sol_};
    const int nt = 64, nu = 64;
    const double t_max = 1.3 * T;
    std::vector<std::pair<double, double>> roots;
    auto mu_at = [&](double t, double U) { return sol_->mu(t, U); };
    auto xmu_at = [&](double t, double U) { return sol_->Xbreve_mu(t, U); };
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nu; ++j) {
            const double ta = t_max * i / nt, tb = t_max * (i + 1) / nt;
            const double ua = c0 - Ur + 2.0 * Ur * j / nu;
            const double ub = c0 - Ur + 2.0 * Ur * (j + 1) / nu;
            double mu_lo = 1e300, mu_hi = -1e300, xm_lo = 1e300, xm_hi = -1e300;
            for (double t : {ta, tb})
                for (double u : {ua, ub}) {
                    const double m = mu_at(t, u), x = xmu_at(t, u);
                    mu_lo = std::min(mu_lo, m);
                    mu_hi = std::max(mu_hi, m);
                    xm_lo = std::min(xm_lo, x);
                    xm_hi = std::max(xm_hi, x);
                }
            if (mu_lo > 0.0 || mu_hi < 0.0 || xm_lo > 0.0 || xm_hi < 0.0) continue;
            // Newton from the cell center with the analytic Jacobian
            double t = 0.5 * (ta + tb), u = 0.5 * (ua + ub);
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                const double f1 = mu_at(t, u), f2 = xmu_at(t, u);
                const double j11 = sol_->L_mu(u), j12 = f2; // d(mu)/dU = Xmu
                const double j21 = cs.LXmu(u), j22 = sol_->XX_mu(t, u);
                const double det = j11 * j22 - j12 * j21;
                if (det == 0.0) break;
                const double dt = (f1 * j22 - f2 * j12) / det;
                const double du = (j11 * f2 - j21 * f1) / det;
                t -= dt;
                u -= du;
                if (!(t > -T && t < 2.0 * t_max && u > c0 - 2.0 * Ur && u < c0 + 2.0 * Ur))
                    break;
                if (std::abs(dt) <= opt.crease_tol * std::max(1.0, T)
                    && std::abs(du) <= opt.crease_tol) {
                    converged = true;
                    break;
                }
            }
            if (!converged) continue;
            bool duplicate = false;
            for (const auto& r : roots)
                if (std::abs(r.first - t) < 1e-6 * std::max(1.0, T)
                    && std::abs(r.second - u) < 1e-6)
                    duplicate = true;
            if (!duplicate) roots.emplace_back(t, u);
        }
    }
    if (roots.empty())
        fail(ErrorKind::search_exhausted, "crease search found no simultaneous zero");
    if (roots.size() > 1)
        fail(ErrorKind::multiple_crease_points,
             "more than one simultaneous zero of (mu, Xmu) in the certified box");
    crease_ = {roots[0].first, roots[0].second};

    // ---- Cauchy horizon: dtau/dx = mu(T + tau, center + x)/2 in shifted time
    const double h0 = Ur / opt.init_steps;
    horizon_ = num::ode_rk4_dense(
        [this, c0](double x, double tau) {
            return 0.5 * sol_->mu_at_shift(tau, c0 + x);
        },
        0.0, 0.0, Ur, h0, opt.tol);
}

double MghdBoundary::t_sing_unrestricted(double U) const {
    const double g = sol_->data().G(U);
    if (!(g < 0.0)) fail(ErrorKind::positive_g, "t_sing undefined where G >= 0");
    return -1.0 / g;
}

double MghdBoundary::t_sing(double U) const {
    const double x = U - sol_->U_center();
    if (x < -sol_->U_rad() - 1e-12 || x > 1e-12)
        fail(ErrorKind::out_of_certified_region,
             "t_sing: U outside [center - U_rad, center]");
    return t_sing_unrestricted(U);
}

double MghdBoundary::t_sing_minus_Tshock(double U) const {
    const InitialData& d = sol_->data();
    const double g = d.G(U);
    if (!(g < 0.0)) fail(ErrorKind::positive_g, "t_sing undefined where G >= 0");
    return d.G_plus_delta(U) / ((-g) * d.delta_star());
}

double MghdBoundary::t_ch_minus_Tshock(double U) const {
    const double x = U - sol_->U_center();
    if (x < -1e-12 || x > sol_->U_rad() + 1e-12)
        fail(ErrorKind::out_of_certified_region,
             "t_ch: U outside [center, center + U_rad]");
    return horizon_.value(x);
}

double MghdBoundary::t_ch(double U) const {
    return sol_->T_shock() + t_ch_minus_Tshock(U);
}

double MghdBoundary::mu_on_ch(double U) const {
    const double tau = t_ch_minus_Tshock(U);
    return sol_->mu_at_shift(tau, U);
}

Region MghdBoundary::classify(double t, double U) const {
    const double c0 = sol_->U_center();
    const double Ur = sol_->U_rad();
    const double T = sol_->T_shock();
    const double x = U - c0;
    const double band_t = opt_.curve_tol * std::max(1.0, T);
    const double band_u = opt_.curve_tol * std::max(1.0, Ur);
    if (t < -band_t || std::abs(x) > Ur + band_u) return Region::exterior;
    if (std::abs(t - T) <= band_t && std::abs(x) <= band_u) return Region::crease;
    if (x <= 0.0 && x >= -Ur) {
        const double ts = t_sing_unrestricted(U);
        if (std::abs(t - ts) <= band_t) return Region::singular_boundary;
        if (t >= 0.0 && t < ts) return Region::m_sing;
        return Region::exterior;
    }
    if (x > 0.0 && x <= Ur) {
        const double tc = t_ch(U);
        if (std::abs(t - tc) <= band_t) return Region::cauchy_horizon;
        if (t >= 0.0 && t <= tc) return Region::m_reg;
        return Region::exterior;
    }
    return Region::exterior;
}

std::array<double, 2> MghdBoundary::Q_on_singular_curve(double U) const {
    const InitialData& d = sol_->data();
    const double x = U - d.U_center();
    if (x < -sol_->U_rad() - 1e-12 || x >= 0.0)
        fail(ErrorKind::out_of_certified_region,
             "Q is defined on the singular curve, U in [center - U_rad, center)");
    const double g = d.G(U);
    const double dg = d.dG(U);
    if (std::abs(dg) < 1e-10 * std::max(1.0, d.b_coeff()))
        fail(ErrorKind::crease_degeneracy, "Q degenerates where G' vanishes");
    return {1.0, g * g / dg};
}

} // namespace relshock
