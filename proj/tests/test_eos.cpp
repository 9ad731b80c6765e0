#include <doctest.h>

#include <cmath>

#include "relshock/eos.hpp"
#include "relshock/errors.hpp"
#include "relshock/fluid_state.hpp"
#include "relshock/numerics.hpp"

using namespace relshock;

namespace {

// analytic forms for the constant sound-speed law, used as the oracle:
//   F(H)   = ln(H/H_bar)/c
//   A[r]   = -k (e^r - 1)/(A e^r + B), k = (1-c^2)/2, A = (1+c)/2, B = (1-c)/2
//   A^-1extracted by solving the Moebius form for e^r
double F_const(double H, double c, double Hb) { return std::log(H / Hb) / c; }

double A_const(double r, double c) {
    const double k = 0.5 * (1.0 - c * c), A = 0.5 * (1.0 + c), B = 0.5 * (1.0 - c);
    return -k * (std::exp(r) - 1.0) / (A * std::exp(r) + B);
}

double A_inv_const(double y, double c) {
    const double k = 0.5 * (1.0 - c * c), A = 0.5 * (1.0 + c), B = 0.5 * (1.0 - c);
    return std::log((k - y * B) / (k + y * A));
}

} // namespace

TEST_CASE("F of the constant law matches the analytic antiderivative") {
    const Eos eos = Eos::constant(0.5, 1.0);
    CHECK(eos.F(1.0) == 0.0);
    for (double H : {0.1, 0.3, 0.9, 1.0, 1.7, 3.0, 12.0})
        CHECK(std::abs(eos.F(H) - F_const(H, 0.5, 1.0))
              <= 1e-10 * std::max(1.0, std::abs(F_const(H, 0.5, 1.0))));
    // strictly increasing
    double prev = eos.F(0.1);
    for (double H = 0.2; H < 16.0; H += 0.37) {
        CHECK(eos.F(H) > prev);
        prev = eos.F(H);
    }
    CHECK_THROWS_AS((void)eos.F(-1.0), Error);
    CHECK_THROWS_AS((void)eos.F(0.0), Error);
}

TEST_CASE("F inverse: fixed point, round trips, and the doubling value") {
    const Eos eos = Eos::constant(0.5, 1.0);
    CHECK(std::abs(eos.F_inv(0.0) - 1.0) < 1e-12);
    for (double H : {0.2, 0.7, 1.0, 2.4, 8.0})
        CHECK(std::abs(eos.F_inv(eos.F(H)) - H) <= 1e-10 * H);
    // c = 1/2: F(2 H_bar) = 2 ln 2, so F_inv(2 ln 2) = 2 H_bar
    CHECK(std::abs(eos.F_inv(2.0 * std::log(2.0)) - 2.0) < 1e-10);
    CHECK_THROWS_AS((void)eos.F_inv(1e9), Error);
}

TEST_CASE("power-law F matches its closed form") {
    // c = c0 (H/Hb)^k  =>  F(H) = (1 - (H/Hb)^{-k})/(c0 k)
    const double c0 = 0.5, k = 0.25;
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(c0, k, 1.0, opt);
    for (double H : {0.3, 0.8, 1.0, 2.0, 5.0}) {
        const double exact = (1.0 - std::pow(H, -k)) / (c0 * k);
        CHECK(std::abs(eos.F(H) - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
        CHECK(std::abs(eos.F_inv(eos.F(H)) - H) <= 1e-10 * H);
    }
}

TEST_CASE("non-degeneracy factor") {
    CHECK(Eos::constant(0.5, 1.0).nondegeneracy_factor() == doctest::Approx(0.75));
    CHECK(Eos::constant(0.5, 3.7).nondegeneracy_factor() == doctest::Approx(0.75));
    // the linearly degenerate endpoint: c = 1, c' = 0
    CHECK(Eos::constant(1.0, 1.0).nondegeneracy_factor() == doctest::Approx(0.0));
    // equality (not just sign) with -2 dA/dr at the origin
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(0.5, 0.25, 1.0, opt);
    CHECK(eos.nondegeneracy_factor()
          == doctest::Approx(-2.0 * eos.antiderivative_A_prime(0.0)).epsilon(1e-12));
}

TEST_CASE("antiderivative of the focusing nonlinearity: constant-law oracle") {
    const Eos eos = Eos::constant(0.5, 1.0);
    CHECK(eos.antiderivative_A(0.0) == 0.0);
    for (double r : {-1.2, -0.6, -0.1, 0.0, 0.2, 0.9, 1.4})
        CHECK(std::abs(eos.antiderivative_A(r) - A_const(r, 0.5)) < 1e-10);
    // slope at the origin: -(1/2) nondegeneracy = -3/8
    const double slope = num::central_diff(
        [&](double r) { return eos.antiderivative_A(r); }, 0.0, 1e-4, 6);
    CHECK(std::abs(slope + 0.375) < 1e-10);
    CHECK(eos.antiderivative_A_prime(0.0) == doctest::Approx(-0.375).epsilon(1e-12));
}

TEST_CASE("A inverse: round trips, analytic oracle, slope") {
    const Eos eos = Eos::constant(0.5, 1.0);
    CHECK(eos.A_inv(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    for (double r : {-0.8, -0.3, -0.05, 0.04, 0.3, 1.1})
        CHECK(std::abs(eos.A_inv(eos.antiderivative_A(r)) - r)
              <= 1e-10 * std::max(1.0, std::abs(r)));
    for (double y : {-0.2, -0.05, 0.02, 0.25})
        CHECK(std::abs(eos.A_inv(y) - A_inv_const(y, 0.5)) < 1e-10);
    // inverse-function slope at 0: -2/nondegeneracy = -8/3
    const double slope =
        num::central_diff([&](double y) { return eos.A_inv(y); }, 0.0, 1e-5, 6);
    CHECK(std::abs(slope + 8.0 / 3.0) < 1e-8);
    CHECK_THROWS_AS((void)eos.A_inv(5.0), Error);
}

TEST_CASE("focusing integrand equals the characteristic-speed derivative") {
    // dual-route check on a variable-c law: dA/dr must equal -dL1/dR+ along
    // simple states; this pins the c H c' form of the genuine-nonlinearity
    // factor
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(0.5, 0.25, 1.0, opt);
    for (double r : {-0.5, -0.1, 0.0, 0.3, 0.8}) {
        const double lhs = eos.antiderivative_A_prime(r);
        const double rhs = -num::central_diff(
            [&](double z) {
                const auto st = fluid_from_invariants(z, 0.0, eos);
                return null_frame(st).L1;
            },
            r, 1e-5, 6);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
    // same for a custom smooth law
    EosOptions narrow;
    narrow.H_max = 5.0;
    const Eos eos2 = Eos::custom([](double H, double) { return 0.4 + 0.05 * (H - 1.0); },
                                 [](double, double) { return 0.05; }, 1.0, narrow);
    for (double r : {-0.4, 0.0, 0.45}) {
        const double lhs = eos2.antiderivative_A_prime(r);
        const double rhs = -num::central_diff(
            [&](double z) {
                return null_frame(fluid_from_invariants(z, 0.0, eos2)).L1;
            },
            r, 1e-5, 6);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("per-entropy F variant") {
    // s-dependent custom law: c = 0.5 + 0.02 s (clamped well inside (0,1])
    const Eos eos = Eos::custom(
        [](double H, double s) { return (0.5 + 0.02 * s) + 0.0 * H; },
        [](double, double) { return 0.0; }, 1.0);
    for (double s : {0.0, 0.5, 2.0}) CHECK(eos.almost_riemann_F(1.0, s) == 0.0);
    // s = 0 reduces to F
    for (double H : {0.4, 1.9})
        CHECK(std::abs(eos.almost_riemann_F(H, 0.0) - eos.F(H)) < 1e-11);
    // analytic: F(H, s) = ln(H)/c(s)
    for (double s : {0.5, 1.5})
        CHECK(std::abs(eos.almost_riemann_F(2.0, s) - std::log(2.0) / (0.5 + 0.02 * s))
              < 1e-11);
    // s-independent laws give s-independent results
    const Eos ceos = Eos::constant(0.5, 1.0);
    CHECK(ceos.almost_riemann_F(1.7, 0.0) == ceos.almost_riemann_F(1.7, 3.0));
}

TEST_CASE("tabulated law interpolates through its rows") {
    std::vector<std::pair<double, double>> rows;
    for (double H = 0.2; H <= 5.01; H += 0.2) rows.emplace_back(H, 0.5 * std::pow(H, 0.25));
    EosOptions opt;
    opt.H_min = 0.25;
    opt.H_max = 4.75;
    const Eos tab = Eos::tabulated(rows, 1.0, opt);
    const Eos exact = Eos::power_law(0.5, 0.25, 1.0, opt);
    for (double H : {0.4, 1.0, 2.3, 4.4}) {
        CHECK(std::abs(tab.sound_speed(H) - exact.sound_speed(H)) < 2e-4);
        CHECK(std::abs(tab.F(H) - exact.F(H)) < 2e-3);
    }
    CHECK(std::abs(tab.F_inv(tab.F(2.0)) - 2.0) < 1e-10);
}

TEST_CASE("sound-speed derivative agrees with finite differences") {
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos pl = Eos::power_law(0.5, 0.25, 1.0, opt);
    std::vector<std::pair<double, double>> rows;
    for (double H = 0.2; H <= 5.01; H += 0.1) rows.emplace_back(H, 0.5 * std::pow(H, 0.25));
    EosOptions topt;
    topt.H_min = 0.3;
    topt.H_max = 4.5;
    const Eos tab = Eos::tabulated(rows, 1.0, topt);
    for (const Eos* e : {&pl, &tab})
        for (double H : {0.6, 1.0, 2.2, 4.0}) {
            const double fd = num::central_diff(
                [&](double x) { return e->sound_speed(x); }, H, 1e-4, 2);
            CHECK(std::abs(fd - e->sound_speed_dH(H)) < 5e-6);
        }
}

TEST_CASE("thermo callbacks gate q") {
    const Eos bare = Eos::constant(0.5, 1.0);
    CHECK_THROWS_AS((void)bare.q(0.0, 0.0), Error);
    ThermoCallbacks t;
    t.n = [](double, double) { return 1.0; };
    t.theta = [](double h, double s) { return 0.3 * std::exp(h + 0.5 * s); };
    t.theta_h = [](double h, double s) { return 0.3 * std::exp(h + 0.5 * s); };
    const Eos eos = bare.with_thermo(t);
    // q = theta/H with H = H_bar e^h
    CHECK(eos.q(0.0, 0.0) == doctest::Approx(0.3));
    CHECK(eos.q(1.0, 0.0) == doctest::Approx(0.3));
    CHECK(eos.q(0.0, 2.0) == doctest::Approx(0.3 * std::exp(1.0)));
    // the rebuilt tables keep working after the original is gone
    CHECK(std::abs(eos.F(2.0) - 2.0 * std::log(2.0)) < 1e-10);
}

TEST_CASE("hyperbolicity guard on the A path") {
    // law leaving (0,1] inside the domain is rejected at construction
    CHECK_THROWS_AS((void)Eos::custom([](double H, double) { return 0.5 + H; },
                                      [](double, double) { return 1.0; }, 1.0),
                    Error);
}
