#include "relshock/simd/kernels.hpp"

#if defined(RELSHOCK_HAVE_AVX2_TU)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

// AVX2 variants. Per-lane operation order matches the scalar reference so
// that results are bit-identical (IEEE add/sub/mul/div/min/max are exact
// selections or correctly rounded; no FMA contraction is used).

namespace relshock::simd {
namespace {

inline __m256d abs_pd(__m256d x) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(x, mask);
}

void v_char_speeds(const double* v, const double* c, double* lp, double* lm,
                   std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vi = _mm256_loadu_pd(v + i);
        const __m256d ci = _mm256_loadu_pd(c + i);
        const __m256d vc = _mm256_mul_pd(vi, ci);
        _mm256_storeu_pd(lp + i, _mm256_div_pd(_mm256_add_pd(vi, ci), _mm256_add_pd(one, vc)));
        _mm256_storeu_pd(lm + i, _mm256_div_pd(_mm256_sub_pd(vi, ci), _mm256_sub_pd(one, vc)));
    }
    for (; i < n; ++i) {
        const double vi = v[i], ci = c[i];
        lp[i] = (vi + ci) / (1.0 + vi * ci);
        lm[i] = (vi - ci) / (1.0 - vi * ci);
    }
}

void v_char_speeds_const(const double* v, double c, double* lp, double* lm,
                         std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vi = _mm256_loadu_pd(v + i);
        const __m256d vc = _mm256_mul_pd(vi, cv);
        _mm256_storeu_pd(lp + i, _mm256_div_pd(_mm256_add_pd(vi, cv), _mm256_add_pd(one, vc)));
        _mm256_storeu_pd(lm + i, _mm256_div_pd(_mm256_sub_pd(vi, cv), _mm256_sub_pd(one, vc)));
    }
    for (; i < n; ++i) {
        const double vi = v[i];
        lp[i] = (vi + c) / (1.0 + vi * c);
        lm[i] = (vi - c) / (1.0 - vi * c);
    }
}

void v_upwind_step(const double* r, const double* lam, double nu, double* out,
                   std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d nuv = _mm256_set1_pd(nu);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ri = _mm256_loadu_pd(r + i);
        const __m256d rm = _mm256_loadu_pd(r + i - 1);
        const __m256d rp = _mm256_loadu_pd(r + i + 1);
        const __m256d l = _mm256_loadu_pd(lam + i);
        const __m256d lpos = _mm256_max_pd(l, zero);
        const __m256d lneg = _mm256_min_pd(l, zero);
        const __m256d flux = _mm256_add_pd(_mm256_mul_pd(lpos, _mm256_sub_pd(ri, rm)),
                                           _mm256_mul_pd(lneg, _mm256_sub_pd(rp, ri)));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(ri, _mm256_mul_pd(nuv, flux)));
    }
    for (; i < n; ++i) {
        const double l = lam[i];
        const double lpos = std::max(l, 0.0);
        const double lneg = std::min(l, 0.0);
        out[i] = r[i] - nu * (lpos * (r[i] - r[i - 1]) + lneg * (r[i + 1] - r[i]));
    }
}

inline double minmod2(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

void v_minmod_slopes(const double* r, double* sig, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ri = _mm256_loadu_pd(r + i);
        const __m256d a = _mm256_sub_pd(ri, _mm256_loadu_pd(r + i - 1));
        const __m256d b = _mm256_sub_pd(_mm256_loadu_pd(r + i + 1), ri);
        const __m256d pick = _mm256_blendv_pd(b, a, _mm256_cmp_pd(abs_pd(a), abs_pd(b), _CMP_LT_OQ));
        const __m256d same_sign = _mm256_cmp_pd(_mm256_mul_pd(a, b), zero, _CMP_GT_OQ);
        _mm256_storeu_pd(sig + i, _mm256_and_pd(pick, same_sign));
    }
    for (; i < n; ++i) sig[i] = minmod2(r[i] - r[i - 1], r[i + 1] - r[i]);
}

void v_muscl_step(const double* r, const double* sig, const double* lam,
                  double nu, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d nuv = _mm256_set1_pd(nu);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ri = _mm256_loadu_pd(r + i);
        const __m256d rm = _mm256_loadu_pd(r + i - 1);
        const __m256d rp = _mm256_loadu_pd(r + i + 1);
        const __m256d si = _mm256_loadu_pd(sig + i);
        const __m256d sm = _mm256_loadu_pd(sig + i - 1);
        const __m256d sp = _mm256_loadu_pd(sig + i + 1);
        const __m256d l = _mm256_loadu_pd(lam + i);
        const __m256d dm = _mm256_add_pd(_mm256_sub_pd(ri, rm),
                                         _mm256_mul_pd(half, _mm256_sub_pd(si, sm)));
        const __m256d dp = _mm256_sub_pd(_mm256_sub_pd(rp, ri),
                                         _mm256_mul_pd(half, _mm256_sub_pd(sp, si)));
        const __m256d d = _mm256_blendv_pd(dp, dm, _mm256_cmp_pd(l, zero, _CMP_GE_OQ));
        _mm256_storeu_pd(out + i,
                         _mm256_sub_pd(ri, _mm256_mul_pd(_mm256_mul_pd(nuv, l), d)));
    }
    for (; i < n; ++i) {
        const double l = lam[i];
        const double dm = (r[i] - r[i - 1]) + 0.5 * (sig[i] - sig[i - 1]);
        const double dp = (r[i + 1] - r[i]) - 0.5 * (sig[i + 1] - sig[i]);
        const double d = l >= 0.0 ? dm : dp;
        out[i] = r[i] - nu * l * d;
    }
}

void v_eval_mu(const double* a, const double* b, double t, double* out,
               std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d tv = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ai = _mm256_loadu_pd(a + i);
        const __m256d bi = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i,
                         _mm256_mul_pd(ai, _mm256_add_pd(one, _mm256_mul_pd(tv, bi))));
    }
    for (; i < n; ++i) out[i] = a[i] * (1.0 + t * b[i]);
}

inline double hmax(__m256d m) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, m);
    return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

double v_max_abs(const double* a, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(a + i)));
    double r = hmax(m);
    for (; i < n; ++i) r = std::max(r, std::abs(a[i]));
    return r;
}

double v_max_abs_jump(const double* a, std::size_t n) {
    if (n < 2) return 0.0;
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 5 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i + 1), _mm256_loadu_pd(a + i));
        m = _mm256_max_pd(m, abs_pd(d));
    }
    double r = hmax(m);
    for (; i + 1 < n; ++i) r = std::max(r, std::abs(a[i + 1] - a[i]));
    return r;
}

double v_linf_diff(const double* a, const double* b, std::size_t n) {
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        m = _mm256_max_pd(m, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                  _mm256_loadu_pd(b + i))));
    }
    double r = hmax(m);
    for (; i < n; ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

double v_l1_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i),
                                                      _mm256_loadu_pd(b + i))));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = n4; i < n; ++i) total += std::abs(a[i] - b[i]);
    return total;
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {
        "avx2",          v_char_speeds, v_char_speeds_const, v_upwind_step,
        v_minmod_slopes, v_muscl_step,  v_eval_mu,           v_max_abs,
        v_max_abs_jump,  v_linf_diff,   v_l1_diff,
    };
    return k;
}

} // namespace relshock::simd

#endif // RELSHOCK_HAVE_AVX2_TU
