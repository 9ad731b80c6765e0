#pragma once

#include <cstddef>

// Data-parallel inner-loop kernels used by the rectangular oracle and the
// grid sweeps. Every kernel has a scalar reference implementation and (on
// x86-64) an AVX2 variant selected at runtime; the two are bit-for-bit
// equivalent because both use the same IEEE operations in the same per-lane
// order and the reductions share one fixed association scheme (4 striped
// accumulators combined as (a0+a1)+(a2+a3), tail elements last).

namespace relshock::simd {

struct Kernels {
    const char* name;

    // lp[i] = (v[i]+c[i])/(1+v[i]*c[i]), lm[i] = (v[i]-c[i])/(1-v[i]*c[i])
    void (*char_speeds)(const double* v, const double* c, double* lp,
                        double* lm, std::size_t n);
    // same with a single sound speed for all cells
    void (*char_speeds_const)(const double* v, double c, double* lp,
                              double* lm, std::size_t n);

    // First-order upwind update, sign-resolved:
    // out[i] = r[i] - nu*( max(lam,0)*(r[i]-r[i-1]) + min(lam,0)*(r[i+1]-r[i]) )
    // r must be valid on [-1, n]; lam and out on [0, n).
    void (*upwind_step)(const double* r, const double* lam, double nu,
                        double* out, std::size_t n);

    // Minmod slopes: sig[i] = minmod(r[i]-r[i-1], r[i+1]-r[i]) (undivided).
    // r valid on [-1, n]; sig on [0, n).
    void (*minmod_slopes)(const double* r, double* sig, std::size_t n);

    // Second-order update from undivided limited slopes:
    // lam>=0: d = (r[i]-r[i-1]) + 0.5*(sig[i]-sig[i-1])
    // lam< 0: d = (r[i+1]-r[i]) - 0.5*(sig[i+1]-sig[i])
    // out[i] = r[i] - nu*lam[i]*d. r and sig valid on [-1, n]; out on [0, n).
    void (*muscl_step)(const double* r, const double* sig, const double* lam,
                       double nu, double* out, std::size_t n);

    // out[i] = a[i]*(1 + t*b[i])
    void (*eval_mu)(const double* a, const double* b, double t, double* out,
                    std::size_t n);

    double (*max_abs)(const double* a, std::size_t n);
    // max_i |a[i+1]-a[i]| for i in [0, n-1)
    double (*max_abs_jump)(const double* a, std::size_t n);
    double (*linf_diff)(const double* a, const double* b, std::size_t n);
    // sum_i |a[i]-b[i]| with the fixed association scheme described above
    double (*l1_diff)(const double* a, const double* b, std::size_t n);
};

const Kernels& scalar_kernels();
bool cpu_has_avx2();
// Null when this build carries no AVX2 translation unit or the CPU lacks it.
const Kernels* avx2_kernels_if_available();

// Runtime-selected kernel set. Honors RELSHOCK_SIMD={auto,scalar,avx2} read
// once at first use; force() overrides (mainly for tests).
const Kernels& active();
void force(const char* name); // "auto", "scalar", "avx2"

} // namespace relshock::simd
