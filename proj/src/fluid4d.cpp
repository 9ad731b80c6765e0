#include "relshock/fluid4d.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Dense>

#include "relshock/errors.hpp"

namespace relshock {

FluidField4D::FluidField4D(const FieldFns& fns, Point4 origin,
                           std::array<double, 4> spacing, Idx4 extents, Eos eos)
    : n_(extents), origin_(origin), dx_(spacing), eos_(std::move(eos)) {
    const std::size_t total =
        (std::size_t)n_[0] * n_[1] * (std::size_t)n_[2] * n_[3];
    h_.resize(total);
    s_.resize(total);
    u0_.resize(total);
    u1_.resize(total);
    u2_.resize(total);
    u3_.resize(total);
    std::size_t k = 0;
    for (int a = 0; a < n_[0]; ++a)
        for (int b = 0; b < n_[1]; ++b)
            for (int c = 0; c < n_[2]; ++c)
                for (int d = 0; d < n_[3]; ++d, ++k) {
                    const Point4 p = point({a, b, c, d});
                    h_[k] = fns.h(p);
                    s_[k] = fns.s ? fns.s(p) : 0.0;
                    const auto us = fns.u_spatial(p);
                    u1_[k] = us[0];
                    u2_[k] = us[1];
                    u3_[k] = us[2];
                    u0_[k] = std::sqrt(1.0 + us[0] * us[0] + us[1] * us[1]
                                       + us[2] * us[2]);
                }
}

FluidField4D::FluidField4D(std::function<double(Point4)> h_fn,
                           std::function<double(Point4)> s_fn,
                           std::function<Vec4(Point4)> u_fn, Point4 origin,
                           std::array<double, 4> spacing, Idx4 extents, Eos eos,
                           double norm_tol)
    : n_(extents), origin_(origin), dx_(spacing), eos_(std::move(eos)) {
    const std::size_t total =
        (std::size_t)n_[0] * n_[1] * (std::size_t)n_[2] * n_[3];
    h_.resize(total);
    s_.resize(total);
    u0_.resize(total);
    u1_.resize(total);
    u2_.resize(total);
    u3_.resize(total);
    std::size_t k = 0;
    for (int a = 0; a < n_[0]; ++a)
        for (int b = 0; b < n_[1]; ++b)
            for (int c = 0; c < n_[2]; ++c)
                for (int d = 0; d < n_[3]; ++d, ++k) {
                    const Point4 p = point({a, b, c, d});
                    h_[k] = h_fn(p);
                    s_[k] = s_fn ? s_fn(p) : 0.0;
                    const Vec4 u = u_fn(p);
                    if (std::abs(dot_mink(u, u) + 1.0) > norm_tol)
                        fail(ErrorKind::invalid_state,
                             "sampled four-velocity violates the normalization "
                             "beyond the construction tolerance");
                    u0_[k] = u[0];
                    u1_[k] = u[1];
                    u2_[k] = u[2];
                    u3_[k] = u[3];
                }
}

Point4 FluidField4D::point(const Idx4& i) const {
    return {origin_.t + dx_[0] * i[0], origin_.x1 + dx_[1] * i[1],
            origin_.x2 + dx_[2] * i[2], origin_.x3 + dx_[3] * i[3]};
}

std::size_t FluidField4D::flat(const Idx4& i) const {
    for (int a = 0; a < 4; ++a)
        if (i[a] < 0 || i[a] >= n_[a])
            fail(ErrorKind::stencil_out_of_bounds, "lattice index outside the grid");
    return ((std::size_t)i[0] * n_[1] + i[1]) * n_[2] * (std::size_t)n_[3]
         + (std::size_t)i[2] * n_[3] + i[3];
}

Vec4 FluidField4D::u(const Idx4& i) const {
    const std::size_t k = flat(i);
    return {u0_[k], u1_[k], u2_[k], u3_[k]};
}

double FluidField4D::H(const Idx4& i) const { return eos_.H_bar() * std::exp(h(i)); }

double FluidField4D::c(const Idx4& i) const { return eos_.sound_speed(H(i), s(i)); }

void FluidField4D::require_interior(const Idx4& i, int pad) const {
    for (int a = 0; a < 4; ++a)
        if (i[a] < pad || i[a] >= n_[a] - pad)
            fail(ErrorKind::stencil_out_of_bounds,
                 "stencil reaches outside the grid; evaluate further inside");
}

double FluidField4D::deriv(const ScalarAt& f, Idx4 i, int axis) const {
    require_interior(i, 2);
    Idx4 ip1 = i, ip2 = i, im1 = i, im2 = i;
    ip1[axis] += 1;
    ip2[axis] += 2;
    im1[axis] -= 1;
    im2[axis] -= 2;
    return (-f(ip2) + 8.0 * f(ip1) - 8.0 * f(im1) + f(im2)) / (12.0 * dx_[axis]);
}

Metric4AtPoint acoustical_metric(const FluidField4D& f, const Idx4& i) {
    const AcousticMetric4 m = acoustic_metric4(f.c(i), f.u(i));
    return {m.g, m.ginv, m.n};
}

Mat4 projection_Pi(const FluidField4D& f, const Idx4& i) {
    const Vec4 u = f.u(i);
    Mat4 pi{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) pi[a][b] = mink(a, b) + u[a] * u[b];
    return pi;
}

Vec4 vort(const FluidField4D& f, const FluidField4D::OneFormAt& xi, const Idx4& i) {
    const Vec4 ul = lower(f.u(i));
    // d_c xi_d by 4th-order FD
    double dxi[4][4];
    for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
            dxi[c][d] = f.deriv([&xi, d](const Idx4& j) { return xi(j)[d]; }, i, c);
    Vec4 out{};
    for (int a = 0; a < 4; ++a) {
        double s = 0.0;
        for (int b = 0; b < 4; ++b) {
            if (ul[b] == 0.0) continue;
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const double e = levi_civita_upper(a, b, c, d);
                    if (e != 0.0) s += e * ul[b] * dxi[c][d];
                }
        }
        out[a] = -s;
    }
    return out;
}

Vec4 vorticity(const FluidField4D& f, const Idx4& i) {
    auto Hu = [&f](const Idx4& j) -> Vec4 {
        const double H = f.H(j);
        Vec4 ul = lower(f.u(j));
        for (auto& v : ul) v *= H;
        return ul;
    };
    return vort(f, Hu, i);
}

Vec4 entropy_gradient(const FluidField4D& f, const Idx4& i) {
    Vec4 S{};
    auto s_at = [&f](const Idx4& j) { return f.s(j); };
    for (int a = 0; a < 4; ++a) S[a] = f.deriv(s_at, i, a);
    return S;
}

std::pair<Vec4, double> modified_variables(const FluidField4D& f, const Idx4& i) {
    const auto& th = f.eos().thermo(); // throws MissingThermoCallback when absent
    const double h = f.h(i), s = f.s(i);
    const double theta = th.theta(h, s);
    const double theta_h = th.theta_h(h, s);
    const double n = th.n(h, s);
    const double c = f.c(i);
    const Vec4 u = f.u(i);
    const Vec4 ul = lower(u);

    // vort(varpi) needs varpi on a stencil around i
    auto varpi_form = [&f](const Idx4& j) { return lower(vorticity(f, j)); };
    f.require_interior(i, 4);
    const Vec4 vort_varpi = vort(f, varpi_form, i);

    const Vec4 varpi = vorticity(f, i);
    const Vec4 varpi_l = lower(varpi);
    const Vec4 S = entropy_gradient(f, i);
    const Vec4 S_up = raise(S);

    auto h_at = [&f](const Idx4& j) { return f.h(j); };
    double dh[4];
    for (int a = 0; a < 4; ++a) dh[a] = f.deriv(h_at, i, a);

    // du[a][b] = d_a u^b and the lowered variant d_a u_b
    double du[4][4], dul[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            du[a][b] = f.deriv([&f, b](const Idx4& j) { return f.u(j)[b]; }, i, a);
            dul[a][b] = (b == 0 ? -1.0 : 1.0) * du[a][b];
        }
    double div_u = 0.0;
    for (int a = 0; a < 4; ++a) div_u += du[a][a];
    double S_dh = 0.0;
    for (int a = 0; a < 4; ++a) S_dh += S_up[a] * dh[a];

    Vec4 C{};
    for (int a = 0; a < 4; ++a) {
        double cross = 0.0;
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int d = 0; d < 4; ++d) {
                    const double e = levi_civita_upper(a, b, cc, d);
                    if (e != 0.0) cross += e * ul[b] * dh[cc] * varpi_l[d];
                }
        double last = 0.0; // S^k m^{al} d_l u_k
        for (int k = 0; k < 4; ++k) {
            const double minv_aa = mink(a, a); // diagonal Minkowski inverse
            last += S_up[k] * minv_aa * dul[a][k];
        }
        C[a] = vort_varpi[a] + cross / (c * c)
             + (theta - theta_h) * S_up[a] * div_u
             + (theta - theta_h) * u[a] * S_dh
             + (theta_h - theta) * last;
    }

    double div_S = 0.0;
    for (int a = 0; a < 4; ++a)
        div_S += f.deriv([&f, a](const Idx4& j) {
            return raise(entropy_gradient(f, j))[a];
        }, i, a);
    const double D = (div_S + S_dh - S_dh / (c * c)) / n;
    return {C, D};
}

double null_form_h(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                   const FluidField4D::ScalarAt& psi, const Idx4& i) {
    const auto m = acoustical_metric(f, i);
    double dphi[4], dpsi[4];
    for (int a = 0; a < 4; ++a) {
        dphi[a] = f.deriv(phi, i, a);
        dpsi[a] = f.deriv(psi, i, a);
    }
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s += m.ginv[a][b] * dphi[a] * dpsi[b];
    return s;
}

double null_form_antisym(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                         const FluidField4D::ScalarAt& psi, int mu, int nu,
                         const Idx4& i) {
    return f.deriv(phi, i, mu) * f.deriv(psi, i, nu)
         - f.deriv(phi, i, nu) * f.deriv(psi, i, mu);
}

std::pair<Vec4, Vec4> B_and_N(const FluidField4D& f, const Idx4& i) {
    const Vec4 u = f.u(i);
    Vec4 B;
    for (int a = 0; a < 4; ++a) B[a] = u[a] / u[0];
    const auto m = acoustical_metric(f, i);
    Vec4 N;
    for (int a = 0; a < 4; ++a) N[a] = -m.ginv[a][0];
    return {B, N};
}

namespace {

double metric_weight(const FluidField4D& f, const Idx4& j) {
    const auto m = acoustical_metric(f, j);
    Eigen::Matrix4d g;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) g(a, b) = m.g[a][b];
    return std::sqrt(std::abs(g.determinant()));
}

} // namespace

double covariant_wave_op(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                         const Idx4& i) {
    f.require_interior(i, 4);
    auto flux = [&f, &phi](const Idx4& j, int a) {
        const auto m = acoustical_metric(f, j);
        double s = 0.0;
        for (int b = 0; b < 4; ++b) s += m.ginv[a][b] * f.deriv(phi, j, b);
        return metric_weight(f, j) * s;
    };
    double div = 0.0;
    for (int a = 0; a < 4; ++a)
        div += f.deriv([&flux, a](const Idx4& j) { return flux(j, a); }, i, a);
    return div / metric_weight(f, i);
}

double constraint_residual(const FluidField4D& f, const Idx4& i) {
    const Vec4 u = f.u(i);
    const Vec4 ul = lower(u);
    auto h_at = [&f](const Idx4& j) { return f.h(j); };
    // u^k d_k (m(u,u)+1) expanded as 2 u^k u_b d_k u^b
    double transport = 0.0, dh_along_u = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int b = 0; b < 4; ++b)
            transport += 2.0 * u[k] * ul[b]
                       * f.deriv([&f, b](const Idx4& j) { return f.u(j)[b]; }, i, k);
        dh_along_u += u[k] * f.deriv(h_at, i, k);
    }
    const double q = dot_mink(u, u) + 1.0;
    return transport + q * dh_along_u;
}

// ------------------------------------------------------------- factories ----

FieldFns manufactured_field(std::uint64_t seed, double amplitude, bool with_entropy) {
    // fixed low-order harmonic mixes; the seed scrambles phases and weights
    auto coef = [seed](int k) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return 2.0 * ((z >> 11) * 0x1.0p-53) - 1.0;
    };
    auto mode = [coef](int base, Point4 p) {
        return coef(base) * std::sin(0.7 * p.t + 0.9 * p.x1 + coef(base + 1))
             + coef(base + 2) * std::cos(0.6 * p.x2 - 0.8 * p.x3 + coef(base + 3))
             + coef(base + 4) * std::sin(0.5 * p.x1 + 0.4 * p.x2 + 0.3 * p.t);
    };
    FieldFns f;
    f.h = [mode, amplitude](Point4 p) { return amplitude * mode(0, p) / 3.0; };
    f.s = [mode, amplitude, with_entropy](Point4 p) {
        return with_entropy ? amplitude * mode(10, p) / 3.0 : 0.0;
    };
    f.u_spatial = [mode, amplitude](Point4 p) -> std::array<double, 3> {
        return {amplitude * mode(20, p) / 3.0, amplitude * mode(30, p) / 3.0,
                amplitude * mode(40, p) / 3.0};
    };
    return f;
}

namespace {

// The embedded fields invert the coordinate map once per distinct (t, x1);
// per-time slices and resolved values are memoized since grid sampling hits
// the same plane-symmetric columns many times.
struct EmbeddedCache {
    CoordinateMap map;
    std::map<double, UpsilonSlice> slices;
    std::map<std::pair<double, double>, double> memo;
    std::mutex lock;

    explicit EmbeddedCache(CoordinateMap m) : map(std::move(m)) {}

    double U_of(double t, double x1) {
        std::lock_guard<std::mutex> g(lock);
        const auto key = std::make_pair(t, x1);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        auto sit = slices.find(t);
        if (sit == slices.end())
            sit = slices.emplace(t, map.make_inverse_slice(t)).first;
        const double U = sit->second.invert(x1).U;
        memo.emplace(key, U);
        return U;
    }
};

} // namespace

FieldFns embedded_simple_wave(const GeometricSolution& sol, const CoordinateMap& map) {
    auto cache = std::make_shared<EmbeddedCache>(map);
    auto U_of = [cache](Point4 p) { return cache->U_of(p.t, p.x1); };
    FieldFns f;
    f.h = [sol, U_of](Point4 p) { return sol.data().state(U_of(p)).h; };
    f.s = [](Point4) { return 0.0; };
    f.u_spatial = [sol, U_of](Point4 p) -> std::array<double, 3> {
        return {sol.data().state(U_of(p)).u1, 0.0, 0.0};
    };
    return f;
}

std::function<double(Point4)> embedded_eikonal(const CoordinateMap& map) {
    auto cache = std::make_shared<EmbeddedCache>(map);
    return [cache](Point4 p) { return cache->U_of(p.t, p.x1); };
}

} // namespace relshock
