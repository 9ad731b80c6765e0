#include "relshock/geo_solution.hpp"

#include <cmath>

#include "relshock/errors.hpp"

namespace relshock {

GeometricSolution::GeometricSolution(InitialData data)
    : data_(std::make_shared<const InitialData>(std::move(data))) {
    if (!data_->certified())
        fail(ErrorKind::out_of_certified_region,
             "geometric solution requires certified initial data (run compute_U_rad)");
}

double GeometricSolution::R_plus(double, double U) const { return data_->R0(U); }

double GeometricSolution::mu(double t, double U) const {
    return data_->n_over_c(U) * (1.0 + t * data_->G(U));
}

double GeometricSolution::mu_at_shift(double tau, double U) const {
    // 1 + (T+tau) G = (G + delta)/delta + tau G
    const double core = data_->G_plus_delta(U) / data_->delta_star() + tau * data_->G(U);
    return data_->n_over_c(U) * core;
}

double GeometricSolution::L_mu(double U) const {
    return data_->n_over_c(U) * data_->G(U);
}

double GeometricSolution::Xbreve_mu(double t, double U) const {
    return t * data_->n_over_c(U) * data_->dG(U)
         + data_->d_n_over_c(U) * (1.0 + t * data_->G(U));
}

double GeometricSolution::XX_mu(double t, double U) const {
    return t * (data_->n_over_c(U) * data_->d2G(U)
                + 2.0 * data_->d_n_over_c(U) * data_->dG(U))
         + data_->d2_n_over_c(U) * (1.0 + t * data_->G(U));
}

double GeometricSolution::partial1_Rplus(double t, double U) const {
    const double denom = 1.0 + t * data_->G(U);
    if (std::abs(denom) < 1e-13 * std::max(1.0, t * data_->delta_star()))
        fail(ErrorKind::at_singularity,
             "partial1_Rplus evaluated on the singular set 1 + tG = 0");
    return -data_->dR0(U) / denom;
}

Report GeometricSolution::verify_sharp_estimates(const SharpOptions& opt) const {
    const InitialData& d = *data_;
    const Certification& cert = d.certification();
    const double T = d.T_shock();
    const double delta = d.delta_star();
    const double b = d.b_coeff();
    const double Ur = cert.U_rad;
    const double c0 = d.U_center();
    Report rep;

    auto add = [&rep](std::string name, bool pass, double olo, double ohi, double blo,
                      double bhi, std::string note = {}) {
        rep.checks.push_back({std::move(name), pass, olo, ohi, blo, bhi, std::move(note)});
    };

    // mu bracketing against b U^2/2 + delta (T - t)
    double q_lo = 1e300, q_hi = -1e300;
    for (int i = 0; i <= opt.nt; ++i) {
        const double t = T * i / opt.nt;
        for (int j = 0; j <= opt.nu; ++j) {
            const double x = -Ur + 2.0 * Ur * j / opt.nu;
            const double model = 0.5 * b * x * x + delta * (T - t);
            if (model <= 0.0) continue;
            const double q = mu(t, c0 + x) / model;
            q_lo = std::min(q_lo, q);
            q_hi = std::max(q_hi, q);
        }
    }
    add("mu_bracket_vs_model", q_lo > 0.0, q_lo, q_hi, 0.0, 1e300,
        "mu / (b U^2/2 + delta (T-t)) must stay inside a positive bracket");

    // L mu uniformly negative, comparable to delta
    double l_lo = 1e300, l_hi = -1e300;
    for (int j = 0; j <= opt.nu; ++j) {
        const double x = -Ur + 2.0 * Ur * j / opt.nu;
        const double r = -L_mu(c0 + x) / delta;
        l_lo = std::min(l_lo, r);
        l_hi = std::max(l_hi, r);
    }
    add("Lmu_negative_comparable_delta", l_lo > 0.0, l_lo, l_hi, 0.0, 1e300,
        "-L mu / delta positive bracket");
    add("Lmu_lower_literal", l_hi <= 1.0 / cert.c_frak + 1e-9, l_lo, l_hi, 0.0,
        1.0 / cert.c_frak, "L mu >= -delta/c_frak literally");

    // Xmu zero location and outer-band floor on the blowup-time slice
    double zero_max = 0.0, outer_min = 1e300;
    double prev = 0.0;
    bool have_prev = false;
    for (int j = 0; j <= opt.nu; ++j) {
        const double x = -Ur + 2.0 * Ur * j / opt.nu;
        const double v = Xbreve_mu(T, c0 + x);
        if (have_prev && prev * v <= 0.0) zero_max = std::max(zero_max, std::abs(x));
        prev = v;
        have_prev = true;
        if (std::abs(x) >= 0.5 * Ur) outer_min = std::min(outer_min, std::abs(v));
    }
    add("Xmu_zero_within_quarter_window", zero_max <= 0.25 * Ur, zero_max, zero_max, 0.0,
        0.25 * Ur);
    add("Xmu_outer_band_floor", outer_min >= b * Ur / 8.0, outer_min, outer_min,
        b * Ur / 8.0, 1e300);

    // transversal convexity on the blowup-time slice
    double xx_lo = 1e300, xx_hi = -1e300;
    for (int j = 0; j <= opt.nu; ++j) {
        const double x = -Ur + 2.0 * Ur * j / opt.nu;
        const double v = XX_mu(T, c0 + x);
        xx_lo = std::min(xx_lo, v);
        xx_hi = std::max(xx_hi, v);
    }
    add("XXmu_transversal_convexity",
        xx_lo >= 0.5 * T * b / cert.C_frak && xx_hi <= 2.0 * T * b / cert.c_frak, xx_lo,
        xx_hi, 0.5 * T * b / cert.C_frak, 2.0 * T * b / cert.c_frak);

    // G sign structure
    bool g_ok = true, dg_ok = true;
    for (int j = 0; j <= opt.nu; ++j) {
        const double x = -Ur + 2.0 * Ur * j / opt.nu;
        if (!(d.G(c0 + x) < 0.0)) g_ok = false;
        if (x != 0.0 && !(d.dG(c0 + x) * x > 0.0)) dg_ok = false;
    }
    add("G_negative_on_region", g_ok, 0, 0, 0, 0);
    add("dG_sign_matches_U", dg_ok, 0, 0, 0, 0);
    add("dG_zero_at_center", std::abs(d.dG(c0)) <= 1e-8 * std::max(1.0, b),
        d.dG(c0), d.dG(c0), -1e-8, 1e-8);

    // positivity away from the interesting region
    add("mu_positive_exterior", cert.exterior_mu_min > 0.0, cert.exterior_mu_min,
        cert.exterior_mu_min, 0.0, 1e300);

    return rep;
}

} // namespace relshock
