#pragma once

#include <array>

#include "relshock/geo_solution.hpp"
#include "relshock/numerics.hpp"

namespace relshock {

enum class Region {
    m_sing,
    m_reg,
    singular_boundary,
    cauchy_horizon,
    crease,
    exterior,
};
const char* to_string(Region r);

struct HorizonOptions {
    double tol = 1e-9;       // Richardson halving agreement for the horizon ODE
    int init_steps = 4096;   // initial step U_rad / init_steps
    double crease_tol = 1e-10;
    double curve_tol = 1e-9; // classification band around the boundary curves
};

// Singular curve, crease, and Cauchy horizon of the certified region, plus
// the region decomposition. The horizon is integrated as tau(U) = t - T_shock
// to avoid forming T_shock + O(U^3) differences at machine precision.
// Membership convention: the horizon (with the crease) belongs to the closed
// development, the singular curve does not; tolerance-band tags report curve
// membership only and cannot encode the half-open distinction.
class MghdBoundary {
public:
    MghdBoundary(const GeometricSolution& sol, HorizonOptions opt = {});

    const GeometricSolution& solution() const { return *sol_; }

    // t_Sing(U) = -1/G(U); requires U in [center - U_rad, center] and G < 0
    double t_sing(double U) const;
    double t_sing_minus_Tshock(double U) const; // cancellation-free
    // same value without the membership restriction to U <= center (the
    // branch with U > center is fictitious and used only diagnostically)
    double t_sing_unrestricted(double U) const;

    struct Crease {
        double t = 0.0, U = 0.0;
    };
    Crease crease() const { return crease_; }

    double t_ch(double U) const;              // U in [center, center + U_rad]
    double t_ch_minus_Tshock(double U) const;
    double mu_on_ch(double U) const;

    Region classify(double t, double U) const;

    // Q = d_t + (G^2/G') d_U on the singular curve; errors at the crease
    std::array<double, 2> Q_on_singular_curve(double U) const;

    const num::OdeTable& horizon_table() const { return horizon_; }

private:
    std::shared_ptr<const GeometricSolution> sol_;
    HorizonOptions opt_;
    Crease crease_;
    num::OdeTable horizon_; // tau(U) over [0, U_rad] in the shifted x = U - center
};

} // namespace relshock
