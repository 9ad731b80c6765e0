#include <doctest.h>

#include <cmath>
#include <random>

#include "relshock/errors.hpp"
#include "relshock/fluid_state.hpp"
#include "relshock/numerics.hpp"

using namespace relshock;

TEST_CASE("background state and simple-wave reductions") {
    const Eos eos = Eos::constant(0.5, 1.0);
    const auto [rp, rm] = invariants_from_fluid(1.0, 0.0, eos);
    CHECK(rp == 0.0);
    CHECK(rm == 0.0);
    const auto st = fluid_from_invariants(0.0, 0.0, eos);
    CHECK(st.u0 == 1.0);
    CHECK(st.u1 == 0.0);
    CHECK(std::abs(st.H - 1.0) < 1e-12);

    // (r, -r): the F-argument vanishes, so H = H_bar and u1 = sinh(r)
    const auto st2 = fluid_from_invariants(0.7, -0.7, eos);
    CHECK(std::abs(st2.H - 1.0) < 1e-11);
    CHECK(st2.u1 == doctest::Approx(std::sinh(0.7)).epsilon(1e-14));
}

TEST_CASE("velocity reflection swaps the invariants") {
    const Eos eos = Eos::constant(0.5, 1.0);
    for (double H : {0.8, 1.0, 1.3})
        for (double u1 : {-0.4, 0.05, 0.3}) {
            const auto [rp, rm] = invariants_from_fluid(H, u1, eos);
            const auto [rp2, rm2] = invariants_from_fluid(H, -u1, eos);
            CHECK(rp2 == doctest::Approx(rm).epsilon(1e-14));
            CHECK(rm2 == doctest::Approx(rp).epsilon(1e-14));
        }
}

TEST_CASE("round trip invariants <-> fluid at 1e-10") {
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(0.5, 0.25, 1.0, opt);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const double rp = u(rng), rm = u(rng);
        const auto st = fluid_from_invariants(rp, rm, eos);
        CHECK(std::abs(st.u0 * st.u0 - st.u1 * st.u1 - 1.0) < 1e-12);
        const auto [rp2, rm2] = invariants_from_fluid(st.H, st.u1, eos);
        CHECK(std::abs(rp2 - rp) < 1e-10);
        CHECK(std::abs(rm2 - rm) < 1e-10);
    }
}

TEST_CASE("null frame: constant state values and invariants") {
    const Eos eos = Eos::constant(0.5, 1.0);
    const auto fr0 = null_frame(fluid_from_invariants(0.0, 0.0, eos));
    CHECK(fr0.L1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fr0.Lbar1 == doctest::Approx(-0.5).epsilon(1e-15));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 300; ++i) {
        const auto st = fluid_from_invariants(u(rng), u(rng), eos);
        const auto fr = null_frame(st);
        const auto m = metric_1d(st);
        const double L[2] = {1.0, fr.L1}, Lb[2] = {1.0, fr.Lbar1};
        double hLLb = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) hLLb += m.g[a][b] * L[a] * Lb[b];
        CHECK(std::abs(hLLb + 2.0) < 1e-12);
        CHECK(std::abs(fr.X1 + st.c / st.n_factor) < 1e-15);
    }
}

TEST_CASE("metric pair: inverse, normalization, u-norm") {
    const Eos eos = Eos::constant(0.5, 1.0);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int i = 0; i < 300; ++i) {
        const auto st = fluid_from_invariants(u(rng), u(rng), eos);
        const auto m = metric_1d(st);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double s = 0.0;
                for (int k = 0; k < 2; ++k) s += m.g[a][k] * m.ginv[k][b];
                CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
            }
        CHECK(std::abs(m.ginv[0][0] + 1.0) < 1e-12);
        const double uu[2] = {st.u0, st.u1};
        double huu = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) huu += m.g[a][b] * uu[a] * uu[b];
        CHECK(std::abs(huu + st.n_factor) < 1e-12);
    }
}

TEST_CASE("sound-speed derivative identity along the invariants") {
    // dc/dR+ at fixed R- equals (cH/2) c'
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(0.5, 0.25, 1.0, opt);
    for (double rp : {-0.4, 0.0, 0.3})
        for (double rm : {-0.2, 0.1}) {
            const auto st = fluid_from_invariants(rp, rm, eos);
            const double expected = 0.5 * st.c * st.H * eos.sound_speed_dH(st.H);
            const double fd = num::central_diff(
                [&](double z) { return fluid_from_invariants(z, rm, eos).c; }, rp, 1e-5,
                6);
            CHECK(std::abs(fd - expected) < 1e-9);
            CHECK(std::abs(invariant_derivatives(st, eos).dc - expected) < 1e-13);
        }
}

TEST_CASE("analytic invariant derivatives match finite differences") {
    EosOptions opt;
    opt.H_max = 8.0;
    const Eos eos = Eos::power_law(0.5, 0.25, 1.0, opt);
    for (double rp : {-0.3, 0.05, 0.4}) {
        const auto st = fluid_from_invariants(rp, 0.0, eos);
        const auto d = invariant_derivatives(st, eos);
        auto fd = [&](auto extract) {
            return num::central_diff(
                [&](double z) {
                    return extract(fluid_from_invariants(z, 0.0, eos));
                },
                rp, 1e-5, 6);
        };
        CHECK(std::abs(d.dH - fd([](const FluidState1D& s) { return s.H; })) < 1e-9);
        CHECK(std::abs(d.dn - fd([](const FluidState1D& s) { return s.n_factor; })) < 1e-9);
        CHECK(std::abs(d.d_n_over_c
                       - fd([](const FluidState1D& s) { return s.n_factor / s.c; }))
              < 1e-9);
        const double dL1_fd = num::central_diff(
            [&](double z) { return null_frame(fluid_from_invariants(z, 0.0, eos)).L1; },
            rp, 1e-5, 6);
        CHECK(std::abs(d.dL1 - dL1_fd) < 1e-9);
    }
}

TEST_CASE("degenerate frame flag") {
    // unreachable through the constructors (|v| < 1 and c <= 1), but the
    // frame guard still rejects hand-built states beyond the threshold
    FluidState1D bogus;
    bogus.u0 = 2.0;
    bogus.u1 = 1.9;
    bogus.c = 1.1;
    bogus.n_factor = 1.0;
    CHECK_THROWS_AS((void)null_frame(bogus), Error);
}

TEST_CASE("overflow guard") {
    const Eos eos = Eos::constant(0.5, 1.0);
    CHECK_THROWS_AS((void)fluid_from_invariants(51.0, 0.0, eos), Error);
    CHECK_THROWS_AS((void)fluid_from_invariants(0.0, -51.0, eos), Error);
}
