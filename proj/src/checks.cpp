#include "relshock/checks.hpp"

#include <cmath>
#include <random>

#include "relshock/errors.hpp"
#include "relshock/fluid_state.hpp"
#include "relshock/numerics.hpp"

namespace relshock {

namespace {

struct MaxTracker {
    double value = 0.0;
    void feed(double v) { value = std::max(value, std::abs(v)); }
};

} // namespace

Report check_identities(const Eos& eos, const IdentityOptions& opt) {
    Report rep;
    auto add = [&rep](const std::string& name, double observed, double tol) {
        rep.checks.push_back({name, observed <= tol, 0.0, observed, 0.0, tol, {}});
    };

    std::mt19937_64 rng(opt.seed);

    // ---- 1D states: algebraic state/frame/metric identities. States are
    // drawn per index from a splittable stream so the sweep can fan out
    // across workers with deterministic results.
    struct StateAcc {
        MaxTracker norm, nfac, hLL, hLbLb, hLLb, hXX, Xdef, Xval, inv_id, inv00,
            hinv_frame, huu, rt;
        double n_min = 1e300, c_min = 1e300, c_max = -1e300;
    };
    std::vector<StateAcc> chunks(std::max(1, opt.workers));
    const std::uint64_t base_seed = opt.seed;
    num::parallel_for(opt.n_states, opt.workers, [&](std::size_t lo, std::size_t hi) {
        const std::size_t slot =
            chunks.size() == 1 ? 0 : (lo * chunks.size()) / std::max<std::size_t>(1, opt.n_states);
        StateAcc& A = chunks[std::min(slot, chunks.size() - 1)];
        for (std::size_t i = lo; i < hi; ++i) {
            std::mt19937_64 local(base_seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
            std::uniform_real_distribution<double> ur2(-0.4, 0.4);
            const double rp = ur2(local), rm = ur2(local);
            const FluidState1D st = fluid_from_invariants(rp, rm, eos);
            A.norm.feed(st.u0 * st.u0 - st.u1 * st.u1 - 1.0);
            A.nfac.feed(st.n_factor - (st.c * st.c + (1.0 - st.c * st.c) * st.u0 * st.u0));
            A.n_min = std::min(A.n_min, st.n_factor);
            A.c_min = std::min(A.c_min, st.c);
            A.c_max = std::max(A.c_max, st.c);

            const NullFrame1D fr = null_frame(st);
            const Metric1D g = metric_1d(st);
            const double L[2] = {1.0, fr.L1}, Lb[2] = {1.0, fr.Lbar1}, X[2] = {0.0, fr.X1};
            auto hdot = [&g](const double a[2], const double b[2]) {
                double s2 = 0.0;
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) s2 += g.g[p][q] * a[p] * b[q];
                return s2;
            };
            A.hLL.feed(hdot(L, L));
            A.hLbLb.feed(hdot(Lb, Lb));
            A.hLLb.feed(hdot(L, Lb) + 2.0);
            A.hXX.feed(hdot(X, X) - 1.0);
            A.Xdef.feed(fr.X1 - 0.5 * (fr.Lbar1 - fr.L1));
            A.Xval.feed(fr.X1 + st.c / st.n_factor);
            const double u[2] = {st.u0, st.u1};
            A.huu.feed(hdot(u, u) + st.n_factor);
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) {
                    double s2 = 0.0;
                    for (int k = 0; k < 2; ++k) s2 += g.g[p][k] * g.ginv[k][q];
                    A.inv_id.feed(s2 - (p == q ? 1.0 : 0.0));
                    A.hinv_frame.feed(g.ginv[p][q] + 0.5 * (L[p] * Lb[q] + Lb[p] * L[q]));
                }
            A.inv00.feed(g.ginv[0][0] + 1.0);

            const auto [rp2, rm2] = invariants_from_fluid(st.H, st.u1, eos);
            A.rt.feed(rp2 - rp);
            A.rt.feed(rm2 - rm);
        }
    });
    MaxTracker norm, nfac, hLL, hLbLb, hLLb, hXX, Xdef, Xval, inv_id, inv00,
        hinv_frame, huu, rt;
    double n_min = 1e300, c_min = 1e300, c_max = -1e300;
    for (const StateAcc& A : chunks) {
        norm.feed(A.norm.value);
        nfac.feed(A.nfac.value);
        hLL.feed(A.hLL.value);
        hLbLb.feed(A.hLbLb.value);
        hLLb.feed(A.hLLb.value);
        hXX.feed(A.hXX.value);
        Xdef.feed(A.Xdef.value);
        Xval.feed(A.Xval.value);
        inv_id.feed(A.inv_id.value);
        inv00.feed(A.inv00.value);
        hinv_frame.feed(A.hinv_frame.value);
        huu.feed(A.huu.value);
        rt.feed(A.rt.value);
        n_min = std::min(n_min, A.n_min);
        c_min = std::min(c_min, A.c_min);
        c_max = std::max(c_max, A.c_max);
    }
    add("state_normalization", norm.value, opt.tol_algebraic);
    add("normalizer_identity", nfac.value, opt.tol_algebraic);
    rep.checks.push_back({"normalizer_positive", n_min > 0.0, n_min, n_min, 0.0, 1e300, {}});
    rep.checks.push_back({"sound_speed_range", c_min > 0.0 && c_max <= 1.0, c_min,
                          c_max, 0.0, 1.0, {}});
    add("frame_null_L", hLL.value, opt.tol_algebraic);
    add("frame_null_Lbar", hLbLb.value, opt.tol_algebraic);
    add("frame_cross_minus2", hLLb.value, opt.tol_algebraic);
    add("frame_X_unit", hXX.value, opt.tol_algebraic);
    add("frame_X_halves_Lbar_minus_L", Xdef.value, opt.tol_algebraic);
    add("frame_X_is_minus_c_over_n", Xval.value, opt.tol_algebraic);
    add("metric_times_inverse", inv_id.value, opt.tol_algebraic);
    add("metric_inverse_00", inv00.value, opt.tol_algebraic);
    add("metric_inverse_from_frame", hinv_frame.value, opt.tol_algebraic);
    add("metric_u_norm", huu.value, opt.tol_algebraic);
    add("invariant_round_trip", rt.value, opt.tol_roundtrip);

    // ---- energy current: bilinear extraction and xi_par bracket
    if (eos.has_thermo()) {
        std::uniform_real_distribution<double> uh(-0.2, 0.2), uu(-0.3, 0.3),
            us(-0.2, 0.2), u01(0.0, 1.0);
        MaxTracker extract;
        double xp_lo = 1e300, xp_hi = -1e300;
        for (int i = 0; i < opt.n_forms; ++i) {
            const State4 V = State4::make(uh(rng), uu(rng), uu(rng), uu(rng), us(rng), eos);
            Vec4 xi{};
            do {
                xi[0] = 0.9 + 0.2 * u01(rng);
                for (int a = 1; a < 4; ++a) xi[a] = 0.4 * xi[0] * (2.0 * u01(rng) - 1.0);
            } while (!xi_is_past_timelike(V, xi));
            const double f1 = 2.0 * u01(rng), f2 = 2.0 * u01(rng);
            const auto M = energy_bilinear_form(V, f1, f2, xi);
            Var6 vd;
            for (auto& v : vd) v = 2.0 * u01(rng) - 1.0;
            const Vec4 J = energy_current(V, f1, f2, vd);
            double xj = 0.0;
            for (int a = 0; a < 4; ++a) xj += xi[a] * J[a];
            double quad = 0.0;
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) quad += vd[a] * M(a, b) * vd[b];
            extract.feed((xj - quad) / std::max(1.0, std::abs(xj)));
            double xp = 0.0;
            for (int a = 0; a < 4; ++a) xp += xi[a] * V.u[a];
            xp_lo = std::min(xp_lo, xp);
            xp_hi = std::max(xp_hi, xp);
        }
        add("energy_form_extraction", extract.value, opt.tol_algebraic);
        rep.checks.push_back({"xi_parallel_bracket", xp_lo > 0.0, xp_lo, xp_hi, 0.0,
                              1e300, {}});
    }

    // ---- 4D kernels: pointwise algebraic identities on a random field
    const FieldFns fns = manufactured_field(opt.seed + 1);
    const FluidField4D field(fns, {0.0, 0.0, 0.0, 0.0}, {0.05, 0.05, 0.05, 0.05},
                             opt.field_extents, eos);
    MaxTracker g_id, g_00, pi_u, pi_proj, pi_tr, g_uu, nNN, nBN, q_anti;
    bool cones_ok = true;
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    const auto& n4 = opt.field_extents;
    for (int a = 0; a < n4[0]; ++a)
        for (int b = 0; b < n4[1]; ++b)
            for (int c = 0; c < n4[2]; ++c)
                for (int d = 0; d < n4[3]; ++d) {
                    const Idx4 i{a, b, c, d};
                    const auto m = acoustical_metric(field, i);
                    const Vec4 u = field.u(i);
                    for (int p = 0; p < 4; ++p)
                        for (int q = 0; q < 4; ++q) {
                            double s = 0.0;
                            for (int k = 0; k < 4; ++k) s += m.g[p][k] * m.ginv[k][q];
                            g_id.feed(s - (p == q ? 1.0 : 0.0));
                        }
                    g_00.feed(m.ginv[0][0] + 1.0);
                    g_uu.feed(contract(m.g, u, u) + m.n);
                    const Mat4 pi = projection_Pi(field, i);
                    const Vec4 ul = lower(u);
                    for (int p = 0; p < 4; ++p) {
                        double s = 0.0;
                        for (int k = 0; k < 4; ++k) s += pi[p][k] * ul[k];
                        pi_u.feed(s);
                    }
                    double tr = 0.0;
                    for (int p = 0; p < 4; ++p) {
                        // (Pi Pi)^{pq} with one index lowered in between
                        for (int q = 0; q < 4; ++q) {
                            double s = 0.0;
                            for (int k = 0; k < 4; ++k)
                                s += pi[p][k] * mink(k, k) * pi[k][q];
                            pi_proj.feed(s - pi[p][q]);
                        }
                        tr += mink(p, p) * pi[p][p];
                    }
                    pi_tr.feed(tr - 3.0);
                    const auto [B, N] = B_and_N(field, i);
                    nNN.feed(contract(m.g, N, N) + 1.0);
                    nBN.feed(contract(m.g, B, N) + 1.0);
                    // h-timelike vectors are Minkowski-timelike
                    Vec4 Z{1.0, 0.0, 0.0, 0.0};
                    for (int k = 1; k < 4; ++k) Z[k] = 0.3 * uz(rng);
                    if (contract(m.g, Z, Z) < 0.0 && !(dot_mink(Z, Z) < 0.0))
                        cones_ok = false;
                }
    add("metric4_times_inverse", g_id.value, opt.tol_algebraic);
    add("metric4_inverse_00", g_00.value, opt.tol_algebraic);
    add("metric4_u_norm", g_uu.value, opt.tol_algebraic);
    add("projection_annihilates_u", pi_u.value, opt.tol_algebraic);
    add("projection_idempotent", pi_proj.value, opt.tol_algebraic);
    add("projection_trace_3", pi_tr.value, opt.tol_algebraic);
    add("normal_unit_length", nNN.value, opt.tol_algebraic);
    add("transport_normal_product", nBN.value, opt.tol_algebraic);
    rep.checks.push_back({"acoustic_cone_inside_light_cone", cones_ok, 0, 0, 0, 0, {}});

    // antisymmetric null form: structural, checked at a few interior points
    auto phi = [&field](const Idx4& i) { return field.h(i); };
    auto psi = [&field](const Idx4& i) { return field.s(i); };
    for (int rep_i = 0; rep_i < 16; ++rep_i) {
        Idx4 i{2 + (int)(rng() % (n4[0] - 4)), 2 + (int)(rng() % (n4[1] - 4)),
               2 + (int)(rng() % (n4[2] - 4)), 2 + (int)(rng() % (n4[3] - 4))};
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu) {
                q_anti.feed(null_form_antisym(field, phi, psi, mu, nu, i)
                            + null_form_antisym(field, phi, psi, nu, mu, i));
                q_anti.feed(null_form_antisym(field, phi, phi, mu, nu, i));
            }
    }
    add("null_form_antisymmetry", q_anti.value, opt.tol_algebraic);

    return rep;
}

Report check_energy_current(const Eos& eos, const KBounds& K, int n_samples,
                            std::uint64_t seed) {
    Report rep;
    const PositivityScan scan = positivity_scan(eos, K, n_samples, seed);
    rep.checks.push_back({"doubling_search_terminates", scan.samples == n_samples,
                          (double)scan.samples, (double)scan.samples, (double)n_samples,
                          (double)n_samples, {}});
    rep.checks.push_back({"positive_definite_at_threshold", scan.min_eigenvalue > 0.0,
                          scan.min_eigenvalue, scan.min_eigenvalue, 0.0, 1e300,
                          "f1 = f2 = " + std::to_string(scan.f_threshold)});
    rep.checks.push_back({"reduced_positivity_f0", scan.min_reduced_eigenvalue > 0.0,
                          scan.min_reduced_eigenvalue, scan.min_reduced_eigenvalue, 0.0,
                          1e300, "restricted variations, f1 = f2 = 0"});
    rep.checks.push_back({"xi_parallel_bracket", scan.xi_par_min > 0.0, scan.xi_par_min,
                          scan.xi_par_max, 0.0, 1e300, {}});
    return rep;
}

KernelConvergence check_kernel_convergence(const GeometricSolution& sol,
                                           const CoordinateMap& map, int n_probes,
                                           int levels, double h0, std::uint64_t seed) {
    KernelConvergence out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uU(-1.0, 1.0), ut(0.5, 3.0), u01(0.0, 1.0);

    // embedded-probe anchors, fixed across refinements; half sit in the
    // plateau of the seed (where the profile is a cubic and the residual
    // super-converges) and half in the transition band, where the generic
    // stencil order shows
    std::vector<Point4> anchors;
    for (int i = 0; i < n_probes; ++i) {
        double U;
        if (i % 2 == 0) {
            U = uU(rng);
        } else {
            const double band = 1.25 + 0.45 * u01(rng);
            U = (i % 4 == 1) ? band : -band;
        }
        const double t = ut(rng);
        anchors.push_back({t, map.x1(t, U), 0.4 * u01(rng), -0.4 * u01(rng)});
    }
    const FieldFns embedded = embedded_simple_wave(sol, map);
    auto eik = embedded_eikonal(map);

    // manufactured anchors for the curl-of-gradient test
    const FieldFns manu = manufactured_field(seed + 100);
    auto s_scalar = [](Point4 p) {
        return 0.1 * std::sin(0.8 * p.t + 0.5 * p.x1 - 0.3 * p.x2 + 0.7 * p.x3)
             + 0.05 * std::cos(0.4 * p.x1 + 0.9 * p.x2);
    };
    auto s_grad = [](Point4 p) -> Vec4 {
        const double c1 = 0.1 * std::cos(0.8 * p.t + 0.5 * p.x1 - 0.3 * p.x2 + 0.7 * p.x3);
        const double s2 = -0.05 * std::sin(0.4 * p.x1 + 0.9 * p.x2);
        return {0.8 * c1, 0.5 * c1 + 0.4 * s2, -0.3 * c1 + 0.9 * s2, 0.7 * c1};
    };

    const Eos& eos = sol.data().eos();
    const int pad = 4, ext = 2 * pad + 1;
    const Idx4 extents{ext, ext, ext, ext};
    const Idx4 center{pad, pad, pad, pad};

    for (int lev = 0; lev < levels; ++lev) {
        const double h = h0 / std::pow(2.0, lev);
        double r_vort = 0.0, r_eik = 0.0, r_wave = 0.0, r_cons = 0.0;
        for (const Point4& p0 : anchors) {
            const Point4 origin{p0.t - pad * h, p0.x1 - pad * h, p0.x2 - pad * h,
                                p0.x3 - pad * h};
            // manufactured grid: vort of the exact entropy gradient
            {
                const FluidField4D f(manu, origin, {h, h, h, h}, extents, eos);
                auto xi = [&f, &s_grad](const Idx4& j) { return s_grad(f.point(j)); };
                const Vec4 w = vort(f, xi, center);
                for (double v : w) r_vort = std::max(r_vort, std::abs(v));
                (void)s_scalar;
            }
            // embedded grid: eikonal, wave, and constraint residuals
            {
                const FluidField4D f(embedded, origin, {h, h, h, h}, extents, eos);
                auto U_at = [&f, &eik](const Idx4& j) { return eik(f.point(j)); };
                r_eik = std::max(r_eik, std::abs(null_form_h(f, U_at, U_at, center)));

                const auto& data = sol.data();
                auto R_at = [&f, &data, &eik](const Idx4& j) {
                    return data.R0(eik(f.point(j)));
                };
                auto LR = [&f, &R_at](const Idx4& j) {
                    const auto st =
                        fluid_from_invariants(R_at(j), 0.0, f.eos());
                    const auto fr = null_frame(st);
                    return f.deriv(R_at, j, 0) + fr.L1 * f.deriv(R_at, j, 1);
                };
                const auto st0 = fluid_from_invariants(R_at(center), 0.0, eos);
                const auto fr0 = null_frame(st0);
                const double lblr =
                    f.deriv(LR, center, 0) + fr0.Lbar1 * f.deriv(LR, center, 1);
                r_wave = std::max(r_wave, std::abs(lblr));

                r_cons = std::max(r_cons, std::abs(constraint_residual(f, center)));
            }
        }
        out.h.push_back(h);
        out.vort_gradient.push_back(r_vort);
        out.eikonal.push_back(r_eik);
        out.wave.push_back(r_wave);
        out.constraint.push_back(r_cons);
    }
    out.order_vort = num::loglog_slope(out.h, out.vort_gradient);
    out.order_eikonal = num::loglog_slope(out.h, out.eikonal);
    out.order_wave = num::loglog_slope(out.h, out.wave);
    out.order_constraint = num::loglog_slope(out.h, out.constraint);
    return out;
}

Report check_embedding_consistency(const GeometricSolution& sol,
                                   const CoordinateMap& map, int n_probes,
                                   std::uint64_t seed) {
    Report rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uU(-1.5, 1.5), ut(0.0, 0.5);
    MaxTracker metric_dev, frame_dev, n_dev;
    bool hBL_ok = true;
    const Eos& eos = sol.data().eos();
    for (int i = 0; i < n_probes; ++i) {
        const double U = uU(rng);
        const FluidState1D st = sol.data().state(U);
        const Vec4 u4{st.u0, st.u1, 0.0, 0.0};
        const AcousticMetric4 m4 = acoustic_metric4(st.c, u4);
        const Metric1D m1 = metric_1d(st);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                metric_dev.feed(m4.g[p][q] - m1.g[p][q]);
                metric_dev.feed(m4.ginv[p][q] - m1.ginv[p][q]);
            }
        n_dev.feed(m4.n - st.n_factor);
        const NullFrame1D fr = null_frame(st);
        const double v = st.u1 / st.u0;
        frame_dev.feed((v + st.c) / (1.0 + v * st.c) - fr.L1);
        frame_dev.feed((v - st.c) / (1.0 - v * st.c) - fr.Lbar1);
        // h(B, L) = n m(B, L) < 0
        const Vec4 B{1.0, st.u1 / st.u0, 0.0, 0.0};
        const Vec4 L4{1.0, fr.L1, 0.0, 0.0};
        const double hBL = contract(m4.g, B, L4);
        if (!(std::abs(hBL - st.n_factor * dot_mink(B, L4)) < 1e-10 && hBL < 0.0))
            hBL_ok = false;
        (void)map;
        (void)eos;
    }
    rep.checks.push_back({"metric_restriction_matches_1d", metric_dev.value <= 1e-10,
                          0.0, metric_dev.value, 0.0, 1e-10, {}});
    rep.checks.push_back({"normalizer_matches_1d", n_dev.value <= 1e-10, 0.0,
                          n_dev.value, 0.0, 1e-10, {}});
    rep.checks.push_back({"frame_matches_1d", frame_dev.value <= 1e-10, 0.0,
                          frame_dev.value, 0.0, 1e-10, {}});
    rep.checks.push_back({"transport_null_product_negative", hBL_ok, 0, 0, 0, 0, {}});
    return rep;
}

} // namespace relshock
