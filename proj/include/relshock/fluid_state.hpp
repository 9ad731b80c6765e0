#pragma once

#include <array>
#include <utility>

#include "relshock/eos.hpp"

namespace relshock {

// One-dimensional fluid state parametrized by the Riemann invariants.
// Constructed through fluid_from_invariants, which checks validity eagerly.
struct FluidState1D {
    double r_plus = 0.0;
    double r_minus = 0.0;
    double h = 0.0;        // log enthalpy
    double H = 1.0;
    double u0 = 1.0;
    double u1 = 0.0;
    double c = 0.0;
    double n_factor = 1.0; // (u0 + u1 c)(u0 - u1 c) = c^2 + (1-c^2) u0^2
};

// u0 = cosh((R+-R-)/2), u1 = sinh((R+-R-)/2), H = F^{-1}((R+ + R-)/2).
FluidState1D fluid_from_invariants(double r_plus, double r_minus, const Eos& eos);

// R± = F(H) ± (1/2) ln((1 + u1/u0)/(1 - u1/u0)) with u0 = sqrt(1 + u1^2).
std::pair<double, double> invariants_from_fluid(double H, double u1, const Eos& eos);

// Null frame in (t, x1) components: L = (1, L1), Lbar = (1, Lbar1),
// X = (0, X1) with X = (Lbar - L)/2 and X1 = -c/n.
struct NullFrame1D {
    double L1 = 0.0;
    double Lbar1 = 0.0;
    double X1 = 0.0;
};
NullFrame1D null_frame(const FluidState1D& st);

// Acoustical metric restricted to the (t, x1) plane, plus its inverse.
struct Metric1D {
    std::array<std::array<double, 2>, 2> g{};
    std::array<std::array<double, 2>, 2> ginv{};
};
Metric1D metric_1d(const FluidState1D& st);

// Derivatives with respect to R+ at fixed R-, via the chain rule through the
// invariant parametrization (dH/dR+ = Hc/2, dc/dR+ = cHc'/2, du0 = u1/2, ...).
struct InvariantDerivs {
    double dH, dc, du0, du1, dn;
    double d_n_over_c;
    double d_c_over_n;
    double dL1;       // equals -dA/dR+ (genuine nonlinearity)
    double dLbar1;
};
InvariantDerivs invariant_derivatives(const FluidState1D& st, const Eos& eos);

} // namespace relshock
