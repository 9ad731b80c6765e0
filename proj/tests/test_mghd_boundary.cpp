#include <doctest.h>

#include <cmath>

#include "relshock/errors.hpp"
#include "relshock/mghd_boundary.hpp"
#include "relshock/numerics.hpp"

using namespace relshock;

namespace {

GeometricSolution make_solution(double center = 0.0) {
    InitialData d = build_initial_data(SeedProfile::plateau_cubic(0.1, 2.0, 2.0, center),
                                       Eos::constant(0.5, 1.0));
    d.set_certification(compute_U_rad(d));
    return GeometricSolution(std::move(d));
}

const MghdBoundary& default_boundary() {
    static const MghdBoundary b(make_solution());
    return b;
}

} // namespace

TEST_CASE("singular curve basics") {
    const auto& b = default_boundary();
    const double T = b.solution().T_shock();
    CHECK(b.t_sing(0.0) == T); // G(0) = -delta bitwise
    // mu vanishes on the tabulated curve at machine precision
    for (double U : {-0.4, -0.2, -0.05}) {
        const double ts = b.t_sing(U);
        CHECK(std::abs(b.solution().mu(ts, U)) < 1e-12);
    }
    // derivative has the sign of U on the left branch
    for (double U : {-0.4, -0.1}) {
        const double d = num::central_diff(
            [&](double u) { return b.t_sing_unrestricted(u); }, U, 1e-6, 6);
        CHECK(d < 0.0);
    }
    CHECK_THROWS_AS((void)b.t_sing(0.2), Error);        // right of the crease
    CHECK_THROWS_AS((void)b.t_sing(-0.9), Error);       // outside certified region
    CHECK_THROWS_AS((void)b.t_sing_unrestricted(1.99), Error); // G >= 0 there
}

TEST_CASE("quadratic expansion of the singular curve") {
    // default profile: G = -eps(1 - U^2/2) on the plateau, so
    // t_sing - T = U^2/(2 eps) + O(U^4); the coefficient is 5 at eps = 0.1
    const auto& b = default_boundary();
    for (double U : {-1e-3, -1e-2}) {
        const double lead = b.t_sing_minus_Tshock(U) / (U * U);
        CHECK(lead == doctest::Approx(5.0).epsilon(1e-4));
    }
    // min of t along the curve is T_shock, attained only at the crease
    const double T = b.solution().T_shock();
    for (double U : {-0.44, -0.2, -0.01})
        CHECK(b.t_sing(U) > T);
}

TEST_CASE("crease location and translation covariance") {
    const auto& b = default_boundary();
    CHECK(std::abs(b.crease().t - 10.0) < 1e-8);
    CHECK(std::abs(b.crease().U - 0.0) < 1e-8);

    const double a = 0.35;
    const MghdBoundary shifted(make_solution(a));
    CHECK(std::abs(shifted.crease().t - 10.0) < 1e-8);
    CHECK(std::abs(shifted.crease().U - a) < 1e-8);
}

TEST_CASE("horizon ODE: flat start, cubic departure, positive mu") {
    const auto& b = default_boundary();
    const double Ur = b.solution().U_rad();
    // zero slope at the crease
    CHECK(std::abs(b.horizon_table().derivative(0.0)) < 1e-12);
    // cubic exponent of t_ch - T on a small window
    std::vector<double> xs, ys;
    for (double f : {1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2, 6.4e-2}) {
        xs.push_back(f * Ur);
        ys.push_back(b.t_ch_minus_Tshock(f * Ur));
    }
    const double slope = num::loglog_slope(xs, ys);
    CHECK(slope == doctest::Approx(3.0).epsilon(0.02));
    // positive leading coefficient
    CHECK(ys.front() > 0.0);

    // mu along the horizon: positive except at the crease, quadratic there
    CHECK(std::abs(b.mu_on_ch(0.0)) < 1e-12);
    std::vector<double> mus;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double m = b.mu_on_ch(xs[i]);
        CHECK(m > 0.0);
        mus.push_back(m);
    }
    CHECK(num::loglog_slope(xs, mus) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("horizon integration is step-independent after halving") {
    const auto sol = make_solution();
    HorizonOptions coarse;
    coarse.init_steps = 512;
    HorizonOptions fine;
    fine.init_steps = 4096;
    const MghdBoundary b1(sol, coarse), b2(sol, fine);
    const double Ur = sol.U_rad();
    for (double f : {0.2, 0.5, 0.9})
        CHECK(std::abs(b1.t_ch_minus_Tshock(f * Ur) - b2.t_ch_minus_Tshock(f * Ur))
              < 1e-9);
}

TEST_CASE("horizon lies below the fictitious singular branch") {
    const auto& b = default_boundary();
    const double Ur = b.solution().U_rad();
    for (int i = 1; i <= 64; ++i) {
        const double U = Ur * i / 64.0;
        CHECK(b.t_ch_minus_Tshock(U) < b.t_sing_minus_Tshock(U));
        CHECK(b.t_sing_minus_Tshock(U) - b.t_ch_minus_Tshock(U) > 0.0);
    }
}

TEST_CASE("classification of the development regions") {
    const auto& b = default_boundary();
    const double T = b.solution().T_shock();
    const double Ur = b.solution().U_rad();
    CHECK(b.classify(0.0, 0.0) == Region::m_sing);
    CHECK(b.classify(T, 0.0) == Region::crease);
    CHECK(b.classify(0.5 * T, -0.5 * Ur) == Region::m_sing);
    CHECK(b.classify(0.5 * T, 0.5 * Ur) == Region::m_reg);
    CHECK(b.classify(b.t_sing(-0.4), -0.4) == Region::singular_boundary);
    CHECK(b.classify(b.t_ch(0.3), 0.3) == Region::cauchy_horizon);
    CHECK(b.classify(b.t_sing(-0.4) + 0.05, -0.4) == Region::exterior);
    CHECK(b.classify(b.t_ch(0.3) + 0.05, 0.3) == Region::exterior);
    CHECK(b.classify(1.0, 2.0 * Ur) == Region::exterior);
    CHECK(b.classify(-0.5, 0.0) == Region::exterior);
    // beyond the horizon but below the fictitious branch: not in the
    // development
    const double U = 0.3 * Ur;
    const double mid = 0.5 * (b.t_ch(U) + b.solution().T_shock()
                              + b.t_sing_minus_Tshock(U));
    if (mid > b.t_ch(U) + 1e-6)
        CHECK(b.classify(mid, U) == Region::exterior);
}

TEST_CASE("tangent field of the singular curve") {
    const auto& b = default_boundary();
    const auto& sol = b.solution();
    for (double U : {-0.4, -0.25, -0.1}) {
        const auto Q = b.Q_on_singular_curve(U);
        CHECK(Q[0] == 1.0);
        CHECK(Q[1] < 0.0); // G^2/G' < 0 on the left branch
        // Q annihilates (c/n) mu along the curve: directional derivative by
        // finite differences
        const double h = 1e-6;
        auto f = [&](double s) {
            const double t = b.t_sing(U) + s * Q[0];
            const double u = U + s * Q[1];
            return sol.c_over_n(u) * sol.mu(t, u);
        };
        CHECK(std::abs((f(h) - f(-h)) / (2.0 * h)) < 1e-6);
    }
    CHECK_THROWS_AS((void)b.Q_on_singular_curve(0.0), Error);
    CHECK_THROWS_AS((void)b.Q_on_singular_curve(0.2), Error);
}
