#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "relshock/simd/kernels.hpp"

using namespace relshock;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo,
                               double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size()
        && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("scalar kernels compute the reference formulas") {
    const auto& k = simd::scalar_kernels();
    std::vector<double> v{0.0, 0.1, -0.2}, c{0.5, 0.5, 0.5}, lp(3), lm(3);
    k.char_speeds(v.data(), c.data(), lp.data(), lm.data(), 3);
    CHECK(lp[0] == doctest::Approx(0.5));
    CHECK(lm[0] == doctest::Approx(-0.5));
    CHECK(lp[1] == doctest::Approx((0.1 + 0.5) / (1.0 + 0.05)));
    std::vector<double> lp2(3), lm2(3);
    k.char_speeds_const(v.data(), 0.5, lp2.data(), lm2.data(), 3);
    CHECK(bit_equal(lp, lp2));
    CHECK(bit_equal(lm, lm2));

    // upwind picks the correct one-sided difference
    std::vector<double> r{0.0, 1.0, 3.0, 6.0, 10.0}; // ghosts at both ends
    std::vector<double> lam{1.0, -1.0, 0.0};
    std::vector<double> out(3);
    k.upwind_step(r.data() + 1, lam.data(), 0.1, out.data(), 3);
    CHECK(out[0] == doctest::Approx(1.0 - 0.1 * (1.0 - 0.0)));
    CHECK(out[1] == doctest::Approx(3.0 + 0.1 * (6.0 - 3.0) * -1.0 * -1.0));
    CHECK(out[2] == doctest::Approx(6.0));

    // minmod slope vanishes at extrema
    std::vector<double> m{0.0, 1.0, 0.5, 1.5, 0.0}, sig(3);
    k.minmod_slopes(m.data() + 1, sig.data(), 3);
    CHECK(sig[0] == 0.0); // local max
    CHECK(sig[1] == 0.0); // local min
    CHECK(sig[2] == 0.0);

    CHECK(k.max_abs(m.data(), 5) == 1.5);
    CHECK(k.max_abs_jump(m.data(), 5) == doctest::Approx(1.5));
    std::vector<double> a{1.0, 2.0, 3.0}, b{2.0, 0.0, 3.5};
    CHECK(k.linf_diff(a.data(), b.data(), 3) == 2.0);
    CHECK(k.l1_diff(a.data(), b.data(), 3) == doctest::Approx(3.5));
}

TEST_CASE("avx2 kernels agree with the scalar reference bit for bit") {
    const simd::Kernels* avx = simd::avx2_kernels_if_available();
    if (!avx) {
        MESSAGE("AVX2 unavailable on this build/CPU; equivalence skipped");
        return;
    }
    const auto& ref = simd::scalar_kernels();
    std::mt19937_64 rng(991);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 67u, 1024u, 1031u}) {
        auto v = random_vec(rng, n, -0.5, 0.5);
        auto c = random_vec(rng, n, 0.1, 0.9);
        std::vector<double> lp1(n), lm1(n), lp2(n), lm2(n);
        ref.char_speeds(v.data(), c.data(), lp1.data(), lm1.data(), n);
        avx->char_speeds(v.data(), c.data(), lp2.data(), lm2.data(), n);
        CHECK(bit_equal(lp1, lp2));
        CHECK(bit_equal(lm1, lm2));
        ref.char_speeds_const(v.data(), 0.37, lp1.data(), lm1.data(), n);
        avx->char_speeds_const(v.data(), 0.37, lp2.data(), lm2.data(), n);
        CHECK(bit_equal(lp1, lp2));
        CHECK(bit_equal(lm1, lm2));

        auto r = random_vec(rng, n + 2, -1.0, 1.0);
        auto lam = random_vec(rng, n, -1.0, 1.0);
        std::vector<double> o1(n), o2(n);
        ref.upwind_step(r.data() + 1, lam.data(), 0.41, o1.data(), n);
        avx->upwind_step(r.data() + 1, lam.data(), 0.41, o2.data(), n);
        CHECK(bit_equal(o1, o2));

        std::vector<double> s1(n + 2), s2(n + 2);
        ref.minmod_slopes(r.data() + 1, s1.data() + 1, n);
        avx->minmod_slopes(r.data() + 1, s2.data() + 1, n);
        CHECK(std::memcmp(s1.data() + 1, s2.data() + 1, n * sizeof(double)) == 0);
        s1[0] = s2[0] = s1[1];
        s1[n + 1] = s2[n + 1] = s1[n];
        ref.muscl_step(r.data() + 1, s1.data() + 1, lam.data(), 0.41, o1.data(), n);
        avx->muscl_step(r.data() + 1, s2.data() + 1, lam.data(), 0.41, o2.data(), n);
        CHECK(bit_equal(o1, o2));

        auto g = random_vec(rng, n, -0.2, 0.2);
        ref.eval_mu(c.data(), g.data(), 3.7, o1.data(), n);
        avx->eval_mu(c.data(), g.data(), 3.7, o2.data(), n);
        CHECK(bit_equal(o1, o2));

        auto bvec = random_vec(rng, n, -1.0, 1.0);
        CHECK(ref.max_abs(r.data(), n) == avx->max_abs(r.data(), n));
        CHECK(ref.max_abs_jump(r.data(), n) == avx->max_abs_jump(r.data(), n));
        CHECK(ref.linf_diff(r.data(), bvec.data(), n)
              == avx->linf_diff(r.data(), bvec.data(), n));
        CHECK(ref.l1_diff(r.data(), bvec.data(), n)
              == avx->l1_diff(r.data(), bvec.data(), n));
    }
}

TEST_CASE("dispatch honors forced selection") {
    simd::force("scalar");
    CHECK(std::string(simd::active().name) == "scalar");
    if (simd::avx2_kernels_if_available()) {
        simd::force("avx2");
        CHECK(std::string(simd::active().name) == "avx2");
    }
    simd::force("auto");
    CHECK((std::string(simd::active().name) == "avx2"
           || std::string(simd::active().name) == "scalar"));
}
