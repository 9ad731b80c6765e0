#include "relshock/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

// Scalar reference kernels. The reductions stripe over 4 accumulators and
// combine them as (a0+a1)+(a2+a3) with the tail added afterwards, matching
// the lane layout of the AVX2 variants exactly.

namespace relshock::simd {
namespace {

void s_char_speeds(const double* v, const double* c, double* lp, double* lm,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i], ci = c[i];
        lp[i] = (vi + ci) / (1.0 + vi * ci);
        lm[i] = (vi - ci) / (1.0 - vi * ci);
    }
}

void s_char_speeds_const(const double* v, double c, double* lp, double* lm,
                         std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        lp[i] = (vi + c) / (1.0 + vi * c);
        lm[i] = (vi - c) / (1.0 - vi * c);
    }
}

void s_upwind_step(const double* r, const double* lam, double nu, double* out,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double l = lam[i];
        const double lpos = std::max(l, 0.0);
        const double lneg = std::min(l, 0.0);
        out[i] = r[i] - nu * (lpos * (r[i] - r[i - 1]) + lneg * (r[i + 1] - r[i]));
    }
}

inline double minmod2(double a, double b) {
    // 0 when signs differ, else the smaller magnitude
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

void s_minmod_slopes(const double* r, double* sig, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        sig[i] = minmod2(r[i] - r[i - 1], r[i + 1] - r[i]);
}

void s_muscl_step(const double* r, const double* sig, const double* lam,
                  double nu, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double l = lam[i];
        const double dm = (r[i] - r[i - 1]) + 0.5 * (sig[i] - sig[i - 1]);
        const double dp = (r[i + 1] - r[i]) - 0.5 * (sig[i + 1] - sig[i]);
        const double d = l >= 0.0 ? dm : dp;
        out[i] = r[i] - nu * l * d;
    }
}

void s_eval_mu(const double* a, const double* b, double t, double* out,
               std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * (1.0 + t * b[i]);
}

double s_max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double s_max_abs_jump(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) m = std::max(m, std::abs(a[i + 1] - a[i]));
    return m;
}

double s_linf_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double s_l1_diff(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc[0] += std::abs(a[i] - b[i]);
        acc[1] += std::abs(a[i + 1] - b[i + 1]);
        acc[2] += std::abs(a[i + 2] - b[i + 2]);
        acc[3] += std::abs(a[i + 3] - b[i + 3]);
    }
    double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (std::size_t i = n4; i < n; ++i) total += std::abs(a[i] - b[i]);
    return total;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",        s_char_speeds, s_char_speeds_const, s_upwind_step,
        s_minmod_slopes, s_muscl_step,  s_eval_mu,           s_max_abs,
        s_max_abs_jump,  s_linf_diff,   s_l1_diff,
    };
    return k;
}

} // namespace relshock::simd
