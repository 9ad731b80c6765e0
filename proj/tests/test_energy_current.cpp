#include <doctest.h>

#include <cmath>
#include <random>

#include "relshock/energy_current.hpp"
#include "relshock/errors.hpp"
#include "relshock/scenario.hpp"

using namespace relshock;

namespace {

const Eos& thermo_eos() {
    static const Eos eos =
        Eos::constant(0.5, 1.0).with_thermo(make_thermo(1.0, 1.0, 0.3, 1.0, 0.5));
    return eos;
}

} // namespace

TEST_CASE("quadratic structure: zero, homogeneity, constant-state value") {
    const State4 V = State4::make(0.0, 0.0, 0.0, 0.0, 0.0, thermo_eos());
    const Var6 zero{};
    for (double j : energy_current(V, 1.0, 1.0, zero)) CHECK(j == 0.0);

    // constant state, variation in h only, xi = dt: xi.J = hdot^2
    Var6 hd{};
    hd[0] = 0.7;
    const Vec4 J = energy_current(V, 0.0, 0.0, hd);
    CHECK(J[0] == doctest::Approx(0.49).epsilon(1e-14));
    CHECK(J[1] == doctest::Approx(0.0));
    CHECK(J[2] == 0.0);
    CHECK(J[3] == 0.0);

    // J(lambda vdot) = lambda^2 J(vdot)
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Var6 vd;
    for (auto& v : vd) v = u(rng);
    Var6 vd2 = vd;
    for (auto& v : vd2) v *= 3.0;
    const Vec4 J1 = energy_current(V, 0.4, 0.8, vd);
    const Vec4 J2 = energy_current(V, 0.4, 0.8, vd2);
    for (int a = 0; a < 4; ++a) CHECK(J2[a] == doctest::Approx(9.0 * J1[a]).epsilon(1e-13));
}

TEST_CASE("bilinear extraction reproduces the contraction") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.3, 0.3), u01(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const State4 V =
            State4::make(u(rng), u(rng), u(rng), u(rng), u(rng), thermo_eos());
        Vec4 xi{1.0, 0.3 * u(rng), 0.3 * u(rng), 0.3 * u(rng)};
        if (!xi_is_past_timelike(V, xi)) continue;
        const auto M = energy_bilinear_form(V, 0.7, 1.3, xi);
        CHECK((M - M.transpose()).norm() == 0.0);
        Var6 vd;
        for (auto& v : vd) v = u(rng);
        double quad = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) quad += vd[a] * M(a, b) * vd[b];
        const Vec4 J = energy_current(V, 0.7, 1.3, vd);
        double xj = 0.0;
        for (int a = 0; a < 4; ++a) xj += xi[a] * J[a];
        CHECK(std::abs(xj - quad) < 1e-13 * std::max(1.0, std::abs(xj)));
    }
}

TEST_CASE("entropy variations are non-coercive without the multipliers") {
    // f1 = f2 = 0 with a pure entropy variation: xi.J vanishes identically,
    // so the form cannot be positive definite and the doubling search must
    // raise the multipliers
    const State4 V = State4::make(0.05, 0.1, -0.05, 0.0, 0.1, thermo_eos());
    const Vec4 xi{1.0, 0.0, 0.0, 0.0};
    Var6 sd{};
    sd[5] = 1.0;
    const Vec4 J = energy_current(V, 0.0, 0.0, sd);
    double xj = 0.0;
    for (int a = 0; a < 4; ++a) xj += xi[a] * J[a];
    CHECK(xj == 0.0);
    const auto M = energy_bilinear_form(V, 0.0, 0.0, xi);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(M);
    CHECK(es.eigenvalues()(0) <= 0.0);
    CHECK(threshold_search(V, xi) >= 1.0);
}

TEST_CASE("positive definiteness at the found threshold over a compact set") {
    const State4 V = State4::make(0.0, 0.0, 0.0, 0.0, 0.0, thermo_eos());
    const Vec4 xi{1.0, 0.0, 0.0, 0.0};
    const double f = threshold_search(V, xi);
    const auto M = energy_bilinear_form(V, f, f, xi);
    // exact minimum over the unit sphere: smallest eigenvalue
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(M);
    CHECK(es.eigenvalues()(0) > 0.0);
    // spot-check against 10^4 random unit variations
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    double min_q = 1e300;
    for (int i = 0; i < 10000; ++i) {
        Var6 vd;
        double n2 = 0.0;
        for (auto& v : vd) {
            v = g(rng);
            n2 += v * v;
        }
        double quad = 0.0;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) quad += vd[a] * M(a, b) * vd[b];
        min_q = std::min(min_q, quad / n2);
    }
    CHECK(min_q >= es.eigenvalues()(0) - 1e-12);
    CHECK(min_q > 0.0);
}

TEST_CASE("reduced positivity holds at f = 0 on the restricted subspace") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    for (int i = 0; i < 200; ++i) {
        const State4 V =
            State4::make(u(rng), u(rng), u(rng), u(rng), u(rng), thermo_eos());
        Vec4 xi{1.0, 0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)};
        if (!xi_is_past_timelike(V, xi)) continue;
        CHECK(reduced_min_eigenvalue(V, xi) > 0.0);
    }
}

TEST_CASE("hypothesis violations are rejected") {
    const State4 V = State4::make(0.0, 0.0, 0.0, 0.0, 0.0, thermo_eos());
    // wrong time orientation
    CHECK(!xi_is_past_timelike(V, {-1.0, 0.0, 0.0, 0.0}));
    // h-spacelike
    CHECK(!xi_is_past_timelike(V, {0.1, 1.0, 0.0, 0.0}));
    CHECK_THROWS_AS((void)threshold_search(V, {0.1, 1.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS((void)reduced_min_eigenvalue(V, {-1.0, 0.0, 0.0, 0.0}), Error);
}

TEST_CASE("scan aggregates the certificates") {
    const auto scan = positivity_scan(thermo_eos(), {}, 200, 99);
    CHECK(scan.samples == 200);
    CHECK(scan.min_eigenvalue > 0.0);
    CHECK(scan.min_reduced_eigenvalue > 0.0);
    CHECK(scan.f_threshold >= 1.0);
    CHECK(scan.xi_par_min > 0.0);
    CHECK(scan.xi_par_max >= scan.xi_par_min);
    CHECK(scan.xi_par_max < 1.0 / (scan.xi_par_min * 0.99) + 10.0);
}
