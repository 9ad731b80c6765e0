#include "relshock/energy_current.hpp"

#include <cmath>
#include <random>

#include "relshock/errors.hpp"

namespace relshock {

State4 State4::make(double h, double u1, double u2, double u3, double s,
                    const Eos& eos) {
    State4 st;
    st.h = h;
    st.s = s;
    st.H = eos.H_bar() * std::exp(h);
    st.c = eos.sound_speed(st.H, s);
    st.u = {std::sqrt(1.0 + u1 * u1 + u2 * u2 + u3 * u3), u1, u2, u3};
    st.q = eos.has_thermo() ? eos.q(h, s) : 0.0;
    return st;
}

Vec4 energy_current(const State4& V, double f1, double f2, const Var6& vdot) {
    const double hd = vdot[0];
    const Vec4 ud{vdot[1], vdot[2], vdot[3], vdot[4]};
    const double sd = vdot[5];
    const double c2 = V.c * V.c;
    const double uu = dot_mink(ud, ud);      // udot_k udot^k
    const double upar = dot_mink(V.u, ud);   // u_k udot^k
    Vec4 J{};
    for (int a = 0; a < 4; ++a) {
        J[a] = f1 * V.u[a] * sd * sd
             - 2.0 * c2 * V.q * ud[a] * sd
             - 2.0 * V.q * V.u[a] * sd * hd
             + V.u[a] * hd * hd
             + 2.0 * c2 * ud[a] * hd
             + c2 * V.u[a] * uu
             + 2.0 * c2 * V.u[a] * upar * hd
             + f2 * V.u[a] * upar * upar;
    }
    return J;
}

namespace {

double xi_dot_J(const State4& V, double f1, double f2, const Vec4& xi,
                const Var6& vdot) {
    const Vec4 J = energy_current(V, f1, f2, vdot);
    double s = 0.0;
    for (int a = 0; a < 4; ++a) s += xi[a] * J[a];
    return s;
}

} // namespace

Eigen::Matrix<double, 6, 6> energy_bilinear_form(const State4& V, double f1, double f2,
                                                 const Vec4& xi) {
    Eigen::Matrix<double, 6, 6> M;
    double diag[6];
    for (int i = 0; i < 6; ++i) {
        Var6 e{};
        e[i] = 1.0;
        diag[i] = xi_dot_J(V, f1, f2, xi, e);
        M(i, i) = diag[i];
    }
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            Var6 e{};
            e[i] = 1.0;
            e[j] = 1.0;
            const double mij = 0.5 * (xi_dot_J(V, f1, f2, xi, e) - diag[i] - diag[j]);
            M(i, j) = mij;
            M(j, i) = mij;
        }
    return M;
}

bool xi_is_past_timelike(const State4& V, const Vec4& xi) {
    if (!(xi[0] > 0.0)) return false;
    const AcousticMetric4 m = acoustic_metric4(V.c, V.u);
    double q = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) q += m.ginv[a][b] * xi[a] * xi[b];
    return q < 0.0;
}

double threshold_search(const State4& V, const Vec4& xi, double margin) {
    if (!xi_is_past_timelike(V, xi))
        fail(ErrorKind::not_timelike, "xi is not past-directed h-timelike at the state");
    double f = 1.0;
    for (int it = 0; it < 60; ++it) {
        const auto M = energy_bilinear_form(V, f, f, xi);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(M);
        if (es.eigenvalues()(0) > margin) return f;
        f *= 2.0;
    }
    fail(ErrorKind::search_exhausted, "doubling search on f1 = f2 did not terminate");
}

double reduced_min_eigenvalue(const State4& V, const Vec4& xi) {
    if (!xi_is_past_timelike(V, xi))
        fail(ErrorKind::not_timelike, "xi is not past-directed h-timelike at the state");
    // subspace basis: h_dot plus three m-orthogonal complements of u
    Eigen::Matrix<double, 6, 4> B = Eigen::Matrix<double, 6, 4>::Zero();
    B(0, 0) = 1.0;
    for (int i = 0; i < 3; ++i) {
        Vec4 e{};
        e[i + 1] = 1.0;
        const double proj = dot_mink(e, V.u); // m(e, u); m(u,u) = -1
        Vec4 w;
        for (int a = 0; a < 4; ++a) w[a] = e[a] + proj * V.u[a];
        for (int a = 0; a < 4; ++a) B(1 + a, 1 + i) = w[a];
    }
    const auto M = energy_bilinear_form(V, 0.0, 0.0, xi);
    Eigen::Matrix<double, 6, 6> N = Eigen::Matrix<double, 6, 6>::Zero();
    N(0, 0) = 1.0;
    for (int a = 0; a < 4; ++a) N(1 + a, 1 + a) = mink(a, a);
    const Eigen::Matrix4d Mr = B.transpose() * M * B;
    const Eigen::Matrix4d Nr = B.transpose() * N * B;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix4d> es(Mr, Nr);
    return es.eigenvalues()(0);
}

PositivityScan positivity_scan(const Eos& eos, const KBounds& K, int n_samples,
                               std::uint64_t seed, double margin) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uh(-K.h_abs, K.h_abs);
    std::uniform_real_distribution<double> uu(-K.u_abs, K.u_abs);
    std::uniform_real_distribution<double> us(-K.s_abs, K.s_abs);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    PositivityScan scan;
    scan.min_eigenvalue = 1e300;
    scan.min_reduced_eigenvalue = 1e300;
    scan.xi_par_min = 1e300;
    scan.xi_par_max = -1e300;
    for (int i = 0; i < n_samples; ++i) {
        const State4 V = State4::make(uh(rng), uu(rng), uu(rng), uu(rng),
                                      eos.has_thermo() ? us(rng) : 0.0, eos);
        Vec4 xi{};
        for (int tries = 0;; ++tries) {
            xi[0] = 0.9 + 0.2 * u01(rng);
            for (int a = 1; a < 4; ++a)
                xi[a] = K.xi_spatial * xi[0] * (2.0 * u01(rng) - 1.0);
            if (xi_is_past_timelike(V, xi)) break;
            if (tries > 500)
                fail(ErrorKind::not_timelike,
                     "could not sample a past-directed h-timelike xi in K");
        }
        double xp = 0.0; // xi_k u^k (xi carries lower indices)
        for (int a = 0; a < 4; ++a) xp += xi[a] * V.u[a];
        scan.xi_par_min = std::min(scan.xi_par_min, xp);
        scan.xi_par_max = std::max(scan.xi_par_max, xp);

        const double f = threshold_search(V, xi, margin);
        scan.f_threshold = std::max(scan.f_threshold, f);
        const auto M = energy_bilinear_form(V, f, f, xi);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(M);
        scan.min_eigenvalue = std::min(scan.min_eigenvalue, es.eigenvalues()(0));
        scan.min_reduced_eigenvalue =
            std::min(scan.min_reduced_eigenvalue, reduced_min_eigenvalue(V, xi));
        ++scan.samples;
    }
    return scan;
}

} // namespace relshock
