#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relshock/eos.hpp"
#include "relshock/fluid_state.hpp"

namespace relshock {

// Seed profile with derivative oracles up to order 4. The amplitude eps is
// part of the profile; with_amplitude produces a rescaled copy.
struct SeedProfile {
    std::string kind = "plateau-cubic";
    double U1 = 2.0;    // support [center - U1, center + U2]
    double U2 = 2.0;
    double eps = 0.1;
    double center = 0.0;
    // k-th derivative (k = 0..4) of the full profile, amplitude included
    std::function<double(double U, int k)> deriv;

    double operator()(double U) const { return deriv(U, 0); }
    double d(double U, int k) const { return deriv(U, k); }
    double support_lo() const { return center - U1; }
    double support_hi() const { return center + U2; }

    SeedProfile with_amplitude(double new_eps) const;
    // add a bump (given with its own derivative oracle) on top of the profile
    SeedProfile perturbed(std::function<double(double, int)> bump) const;

    // w(U) * (-(U-center) + (U-center)^3/6) with a C^4 plateau window equal
    // to 1 on [center-1, center+1] and 0 outside the support
    static SeedProfile plateau_cubic(double eps = 0.1, double U1 = 2.0, double U2 = 2.0,
                                     double center = 0.0);
};

struct GridSpec {
    int support_n = 4096; // uniform points across the support
    int crease_n = 1024;  // extra points clustered within |U - center| <= 0.1
};

enum class SeedViolation { none, support, minimum, third_derivative, tail };
const char* to_string(SeedViolation v);

struct SeedValidation {
    bool ok = false;
    SeedViolation violation = SeedViolation::none;
    double witness_U = 0.0;
    double margin = 0.0;
    std::string message;
    double delta_star = 0.0;
    double b_coeff = 0.0;
    double p_coeff = 0.0;
};

// Certifies the profile conditions on a dense grid; reports the first
// violated condition with the witnessing U.
SeedValidation validate_seed(const SeedProfile& profile, const GridSpec& grid = {});

struct BuildOptions {
    GridSpec grid;
    int max_halvings = 40;
    double c_margin_lo = 1e-3;  // compact subset of the hyperbolic interior
    double c_margin_hi = 1e-9;  // require c <= 1 - c_margin_hi
    double r_safety = 0.95;     // |R+| <= r_safety * eos.r_max()
    double nd_margin = 0.1;     // |A'(R0)| >= nd_margin * |A'(0)|
};

struct CertBracket {
    double lo = 0.0, hi = 0.0;
};

// Empirical certification of the interesting region [center-U_rad, center+U_rad].
struct Certification {
    double U_rad = 0.0;
    double U_center = 0.0;
    double c_frak = 0.0, C_frak = 0.0;     // min/max of c/n over the data
    CertBracket G_plus_delta_over_x2;      // (G+delta)/x^2, x = U - center
    CertBracket dG_over_x;
    CertBracket minus_G_over_delta;        // |G|/delta on the region
    CertBracket XXmu_at_Tshock;
    double Xmu_zero_max_abs_x = 0.0;       // furthest zero of Xmu on Sigma_T
    double Xmu_outer_band_min = 0.0;
    double exterior_mu_min = 0.0;
    double taylor_remainder_sup = 0.0;     // sup |(G+delta-b x^2/2)/x^3|
};

struct CertOptions {
    double kappa_floor = 0.9;  // required floor of |G|/delta on the region
    double U_rad_min = 0.05;
    double U_rad_max = 1.0;
    int grid_n = 801;
    int bisect_iters = 48;
};

class InitialData {
public:
    InitialData(SeedProfile profile, Eos eos, BuildOptions opt = {});

    const SeedProfile& profile() const { return profile_; }
    const Eos& eos() const { return eos_; }
    double eps() const { return profile_.eps; }
    double delta_star() const { return delta_star_; }
    double b_coeff() const { return b_coeff_; }
    double p_coeff() const { return p_coeff_; }
    double T_shock() const { return T_shock_; }
    double U_center() const { return profile_.center; }
    double support_lo() const { return profile_.support_lo(); }
    double support_hi() const { return profile_.support_hi(); }

    double phi(double U, int k = 0) const { return profile_.d(U, k); }
    double G(double U) const { return profile_.d(U, 1); }
    double dG(double U) const { return profile_.d(U, 2); }
    double d2G(double U) const { return profile_.d(U, 3); }
    double G_plus_delta(double U) const { return G(U) + delta_star_; }

    double R0(double U) const;      // A^{-1}(phi(U)); exactly 0 outside support
    double dR0(double U) const;     // G / A'(R0)
    FluidState1D state(double U) const;
    double c_over_n(double U) const;
    double n_over_c(double U) const;
    double d_n_over_c(double U) const;  // analytic chain rule
    double d2_n_over_c(double U) const; // 6th-order FD of the analytic first derivative
    double L1(double U) const;
    double dL1(double U) const;

    const SeedValidation& validation() const { return validation_; }

    bool certified() const { return certified_; }
    const Certification& certification() const;
    void set_certification(Certification cert);

private:
    SeedProfile profile_;
    Eos eos_;
    BuildOptions opt_;
    SeedValidation validation_;
    double delta_star_ = 0.0, b_coeff_ = 0.0, p_coeff_ = 0.0, T_shock_ = 0.0;
    bool certified_ = false;
    Certification cert_;
};

// Validates the seed, shrinks the amplitude until the induced states stay in
// a compact subset of the hyperbolic interior and the data non-degeneracy
// holds with margin, then assembles the data constants.
InitialData build_initial_data(const SeedProfile& profile, const Eos& eos,
                               const BuildOptions& opt = {});

// Largest U_rad in (U_rad_min, U_rad_max) whose grid certification passes.
Certification compute_U_rad(const InitialData& data, const CertOptions& opt = {});

} // namespace relshock
