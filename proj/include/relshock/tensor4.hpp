#pragma once

#include <array>

namespace relshock {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// Minkowski metric diag(-1,1,1,1); indices are raised and lowered with it.
inline constexpr double mink(int a, int b) {
    if (a != b) return 0.0;
    return a == 0 ? -1.0 : 1.0;
}

inline Vec4 lower(const Vec4& v) { return {-v[0], v[1], v[2], v[3]}; }
inline Vec4 raise(const Vec4& v) { return {-v[0], v[1], v[2], v[3]}; }

inline double dot_mink(const Vec4& a, const Vec4& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double contract(const Mat4& g, const Vec4& a, const Vec4& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[i][j] * a[i] * b[j];
    return s;
}

// totally antisymmetric symbol with eps_{0123} = +1
inline double levi_civita(int a, int b, int c, int d) {
    const int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] == p[j]) return 0.0;
    int sign = 1;
    int q[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            if (q[j] > q[j + 1]) {
                const int t = q[j];
                q[j] = q[j + 1];
                q[j + 1] = t;
                sign = -sign;
            }
    return sign;
}

// indices raised with the Minkowski inverse: eps^{0123} = -1
inline double levi_civita_upper(int a, int b, int c, int d) {
    const double sgn = mink(a, a) * mink(b, b) * mink(c, c) * mink(d, d);
    return sgn * levi_civita(a, b, c, d);
}

struct AcousticMetric4 {
    Mat4 g{};    // h_{ab}
    Mat4 ginv{}; // (h^{-1})^{ab}
    double n = 0.0;
};

// Acoustical metric from the sound speed and the (upper-index) four-velocity.
inline AcousticMetric4 acoustic_metric4(double c, const Vec4& u) {
    AcousticMetric4 out;
    const double c2 = c * c;
    const Vec4 ul = lower(u);
    out.n = c2 + (1.0 - c2) * u[0] * u[0];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            out.g[a][b] = out.n * (mink(a, b) / c2 + (1.0 / c2 - 1.0) * ul[a] * ul[b]);
            out.ginv[a][b] = (c2 * mink(a, b) + (c2 - 1.0) * u[a] * u[b]) / out.n;
        }
    return out;
}

} // namespace relshock
