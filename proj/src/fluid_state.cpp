#include "relshock/fluid_state.hpp"

#include <cmath>

#include "relshock/errors.hpp"

namespace relshock {

FluidState1D fluid_from_invariants(double r_plus, double r_minus, const Eos& eos) {
    if (std::abs(r_plus) > 50.0 || std::abs(r_minus) > 50.0)
        fail(ErrorKind::invalid_state, "Riemann invariant beyond hyperbolic-trig overflow guard");
    FluidState1D st;
    st.r_plus = r_plus;
    st.r_minus = r_minus;
    const double w = 0.5 * (r_plus - r_minus);
    st.u0 = std::cosh(w);
    st.u1 = std::sinh(w);
    st.H = eos.F_inv(0.5 * (r_plus + r_minus));
    st.h = std::log(st.H / eos.H_bar());
    st.c = eos.sound_speed(st.H);
    st.n_factor = (st.u0 + st.u1 * st.c) * (st.u0 - st.u1 * st.c);
    if (!(st.n_factor > 0.0))
        fail(ErrorKind::invalid_state, "state has nonpositive normalizer");
    return st;
}

std::pair<double, double> invariants_from_fluid(double H, double u1, const Eos& eos) {
    const double u0 = std::sqrt(1.0 + u1 * u1);
    const double v = u1 / u0;
    const double a = 0.5 * std::log((1.0 + v) / (1.0 - v));
    const double f = eos.F(H);
    return {f + a, f - a};
}

NullFrame1D null_frame(const FluidState1D& st) {
    const double v = st.u1 / st.u0;
    if (std::abs(v) * st.c >= 1.0)
        fail(ErrorKind::degenerate_frame, "null frame degenerates: |v| c >= 1");
    NullFrame1D fr;
    fr.L1 = (st.u1 + st.c * st.u0) / (st.u0 + st.c * st.u1);
    fr.Lbar1 = (st.u1 - st.c * st.u0) / (st.u0 - st.c * st.u1);
    fr.X1 = -st.c / st.n_factor;
    return fr;
}

Metric1D metric_1d(const FluidState1D& st) {
    const double c2 = st.c * st.c;
    const double n = st.n_factor;
    // covariant Minkowski components of u: u_0 = -u0, u_1 = u1
    const double ul[2] = {-st.u0, st.u1};
    const double uu[2] = {st.u0, st.u1};
    const double m[2][2] = {{-1.0, 0.0}, {0.0, 1.0}};
    Metric1D out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            out.g[a][b] = n * (m[a][b] / c2 + (1.0 / c2 - 1.0) * ul[a] * ul[b]);
            out.ginv[a][b] = (c2 * m[a][b] + (c2 - 1.0) * uu[a] * uu[b]) / n;
        }
    return out;
}

InvariantDerivs invariant_derivatives(const FluidState1D& st, const Eos& eos) {
    InvariantDerivs d;
    const double cp = eos.sound_speed_dH(st.H);
    d.dH = 0.5 * st.H * st.c;
    d.dc = 0.5 * st.c * st.H * cp;
    d.du0 = 0.5 * st.u1;
    d.du1 = 0.5 * st.u0;
    // n = c^2 + (1 - c^2) u0^2
    d.dn = 2.0 * st.c * d.dc + (1.0 - st.c * st.c) * 2.0 * st.u0 * d.du0
         - 2.0 * st.c * d.dc * st.u0 * st.u0;
    const double n = st.n_factor, c = st.c;
    d.d_n_over_c = (d.dn * c - n * d.dc) / (c * c);
    d.d_c_over_n = (d.dc * n - c * d.dn) / (n * n);
    const double v = st.u1 / st.u0;
    const double dv = 0.5 * (1.0 - v * v);
    const double ap = 1.0 + v * c, am = 1.0 - v * c;
    d.dL1 = (dv * (1.0 - c * c) + d.dc * (1.0 - v * v)) / (ap * ap);
    d.dLbar1 = (dv * (1.0 - c * c) - d.dc * (1.0 - v * v)) / (am * am);
    return d;
}

} // namespace relshock
