// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and thresholds are pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "relshock/checks.hpp"
#include "relshock/errors.hpp"
#include "relshock/numerics.hpp"
#include "relshock/oracle_solver.hpp"
#include "relshock/scenario.hpp"

using namespace relshock;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void begin() { g_t0 = std::chrono::steady_clock::now(); }

double elapsed() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0)
        .count();
}

void report(int id, const char* name, bool pass, const std::string& detail) {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %d: %s  %s  [%.1fs]\n", pass ? "PASS" : "FAIL", id, name,
                detail.c_str(), elapsed());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// -------------------------------------------------------------------------
// 1. identity suite at 1e-12 (1e-10 through tabulated inverses), <= 1 min
// -------------------------------------------------------------------------
void criterion_1(Scenario& sc) {
    begin();
    IdentityOptions opt;
    opt.n_states = 10000;
    opt.n_forms = 1000;
    const Report rep = check_identities(sc.eos(), opt);
    const Report emb = check_embedding_consistency(sc.solution(), sc.map(), 32);
    double worst = 0.0;
    std::string first_fail;
    bool pass = true;
    for (const Report* r : {&rep, &emb})
        for (const auto& c : r->checks) {
            if (!c.pass && first_fail.empty()) first_fail = c.name;
            pass = pass && c.pass;
            worst = std::max(worst, std::abs(c.observed_hi));
        }
    const double secs = elapsed();
    pass = pass && secs <= 60.0;
    report(1, "identity suite", pass,
           first_fail.empty() ? fmt("(all %zu checks, runtime %.1fs <= 60s)",
                                    rep.checks.size() + emb.checks.size(), secs)
                              : "(first failure: " + first_fail + ")");
}

// -------------------------------------------------------------------------
// 2. closed-form mu vs independent transport integration, <= 1e-8
// -------------------------------------------------------------------------
void criterion_2(Scenario& sc) {
    begin();
    const GeometricSolution& sol = sc.solution();
    const InitialData& d = sol.data();
    const double T = sol.T_shock(), Ur = sol.U_rad(), c0 = sol.U_center();
    double max_abs = 0.0, scale = 1.0;
    for (int j = 0; j <= 200; ++j) {
        const double U = c0 - Ur + 2.0 * Ur * j / 200.0;
        // independent source: focusing integrand times an FD slope of the
        // tabulated inverse, not the analytic profile derivative
        const double dR0_fd = num::central_diff(
            [&](double u) { return d.eos().A_inv(d.phi(u)); }, U, 1e-4, 6);
        const double G_indep = d.eos().antiderivative_A_prime(d.R0(U)) * dR0_fd;
        const double noc = d.n_over_c(U);
        for (int i = 0; i <= 100; ++i) {
            const double t = T * i / 100.0;
            const double mu_ode =
                noc * num::ode_rk4([&](double, double) { return G_indep; }, 0.0, 1.0,
                                   t, 64);
            max_abs = std::max(max_abs, std::abs(mu_ode - sol.mu(t, U)));
            scale = std::max(scale, std::abs(sol.mu(t, U)));
        }
    }
    const double rel = max_abs / scale;
    report(2, "closed-form mu vs transport ODE", rel <= 1e-8,
           fmt("(max rel error %.3g <= 1e-8)", rel));
}

// -------------------------------------------------------------------------
// 3. blowup time from the mesh ladder within 2%, <= 10 min
// -------------------------------------------------------------------------
void criterion_3(Scenario& sc) {
    begin();
    std::string detail;
    bool pass = false;
    try {
        LadderOptions lo; // defaults: finest support/8192, 4 levels
        const BlowupEstimate est = estimate_blowup_time(sc.data(), lo);
        const double rel = est.t_estimate / sc.data().T_shock() - 1.0;
        const double secs = elapsed();
        pass = std::abs(rel) <= 0.02 && secs <= 600.0;
        detail = fmt("(estimate %.4f vs 1/delta = %.4f, rel %.2f%%, runtime %.0fs)",
                     est.t_estimate, sc.data().T_shock(), 100.0 * rel, secs);
    } catch (const Error& e) {
        detail = std::string("(") + e.kind_name() + ": " + e.what() + ")";
    }
    report(3, "oracle shock-time estimate", pass, detail);
}

// -------------------------------------------------------------------------
// 4. boundary asymptotics: exponents 2 / 3 / 2 within 0.05
// -------------------------------------------------------------------------
void criterion_4(Scenario& sc) {
    begin();
    const auto b = sc.boundary();
    const double Ur = sc.solution().U_rad();
    const double c0 = sc.solution().U_center();
    std::vector<double> xs, sing, ch, mu;
    for (int i = 0; i <= 24; ++i) {
        const double x = Ur * 1e-3 * std::pow(100.0, i / 24.0); // [1e-3, 1e-1] Ur
        xs.push_back(x);
        sing.push_back(b->t_sing_minus_Tshock(c0 - x));
        ch.push_back(b->t_ch_minus_Tshock(c0 + x));
        mu.push_back(b->mu_on_ch(c0 + x));
    }
    bool positive = true;
    for (std::size_t i = 0; i < xs.size(); ++i)
        positive = positive && sing[i] > 0.0 && ch[i] > 0.0 && mu[i] > 0.0;
    const double e_sing = num::loglog_slope(xs, sing);
    const double e_ch = num::loglog_slope(xs, ch);
    const double e_mu = num::loglog_slope(xs, mu);
    const bool pass = positive && std::abs(e_sing - 2.0) <= 0.05
                   && std::abs(e_ch - 3.0) <= 0.05 && std::abs(e_mu - 2.0) <= 0.05;
    report(4, "boundary asymptotic exponents", pass,
           fmt("(t_sing: %.3f vs 2, t_ch: %.3f vs 3, mu on horizon: %.3f vs 2, "
               "coefficients positive: %s)",
               e_sing, e_ch, e_mu, positive ? "yes" : "no"));
}

// -------------------------------------------------------------------------
// 5. jacobian identities + injectivity audit + mu signs on regions
// -------------------------------------------------------------------------
void criterion_5(Scenario& sc) {
    begin();
    const CoordinateMap& map = sc.map();
    const auto b = sc.boundary();
    const GeometricSolution& sol = sc.solution();
    const double T = sol.T_shock(), Ur = sol.U_rad(), c0 = sol.U_center();

    // exact analytic identity and the mu route
    std::mt19937_64 rng(20260809);
    std::uniform_real_distribution<double> uu(-Ur, Ur), ut(0.0, 0.999);
    bool exact_ok = true;
    double fd_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double U = c0 + uu(rng);
        const double t = ut(rng) * T;
        const double jd = map.jacobian_det(t, U);
        if (jd != -(1.0 + t * sol.data().G(U))) exact_ok = false;
        if (std::abs(jd - map.jacobian_det_mu_route(t, U)) > 1e-12) exact_ok = false;
        const double fd = num::central_diff(
            [&](double u) { return map.x1(t, u); }, U, 1e-5, 6);
        fd_worst = std::max(fd_worst, std::abs(fd - jd));
    }

    const auto audit = map.injectivity_audit(*b, 200, 200, 2);

    // mu signs on classified samples
    bool mu_signs = true;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const double U = c0 - Ur + 2.0 * Ur * j / 200.0;
            const double t = 1.2 * T * i / 200.0;
            const Region r = b->classify(t, U);
            if (r == Region::m_sing || r == Region::m_reg)
                mu_signs = mu_signs && sol.mu(t, U) > 0.0;
        }
    for (int j = 0; j <= 200; ++j) {
        const double U = c0 - Ur + Ur * j / 200.0;
        mu_signs = mu_signs && std::abs(sol.mu(b->t_sing(U), U)) <= 1e-12;
    }

    const bool pass = exact_ok && fd_worst <= 1e-6 && audit.pass
                   && audit.collisions == 0 && mu_signs;
    report(5, "jacobian and injectivity", pass,
           fmt("(analytic exact: %s, FD match %.2g <= 1e-6, collisions %ld, "
               "mu signs: %s)",
               exact_ok ? "yes" : "no", fd_worst, audit.collisions,
               mu_signs ? "ok" : "violated"));
}

// -------------------------------------------------------------------------
// 6. blowup bracket of mu |partial1 R| along the singular approach
// -------------------------------------------------------------------------
void criterion_6(Scenario& sc) {
    begin();
    const GeometricSolution& sol = sc.solution();
    const auto b = sc.boundary();
    const double Ur = sol.U_rad(), c0 = sol.U_center();
    double lo = 1e300, hi = 0.0;
    for (int j = 0; j <= 200; ++j) {
        const double U = c0 - Ur + (Ur - 0.05 * Ur) * j / 200.0;
        const double ts = b->t_sing(U);
        for (double f : {0.9, 0.99, 0.9999, 1.0 - 1e-8}) {
            const double t = f * ts;
            const double v = sol.mu(t, U) * std::abs(sol.partial1_Rplus(t, U));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const bool pass = lo > 0.0 && hi / lo <= 10.0;
    report(6, "bounded mu-weighted gradient at the singular curve", pass,
           fmt("(bracket [%.4g, %.4g], ratio %.2f <= 10)", lo, hi, hi / lo));
}

// -------------------------------------------------------------------------
// 7. first-order oracle: L1 error halves per refinement at t = T/2
// -------------------------------------------------------------------------
void criterion_7(Scenario& sc) {
    begin();
    const double t = 0.5 * sc.data().T_shock();
    std::vector<double> l1;
    for (int lev = 0; lev < 4; ++lev) {
        OracleOptions oo;
        oo.dx = (4.0 / 512.0) / std::pow(2.0, lev);
        oo.scheme = "upwind";
        const auto run = evolve(sc.data(), oo, t);
        l1.push_back(compare_with_geometric(run, sc.solution(), sc.map()).l1);
    }
    bool pass = true;
    std::string ratios;
    for (std::size_t i = 0; i + 1 < l1.size(); ++i) {
        const double r = l1[i] / l1[i + 1];
        ratios += fmt("%.3f ", r);
        pass = pass && std::abs(r - 2.0) <= 0.3;
    }
    report(7, "oracle L1 convergence ratios", pass,
           fmt("(ratios %svs 2 +- 0.3)", ratios.c_str()));
}

// -------------------------------------------------------------------------
// 8. energy-current positivity over a thousand random pairs
// -------------------------------------------------------------------------
void criterion_8(Scenario& sc) {
    begin();
    std::string detail;
    bool pass = false;
    try {
        const PositivityScan scan = positivity_scan(sc.eos(), {}, 1000, 20260809);
        pass = scan.samples == 1000 && scan.min_eigenvalue > 0.0
            && scan.min_reduced_eigenvalue > 0.0;
        detail = fmt("(min eigenvalue %.3g at f <= %.0f, reduced min %.3g, "
                     "xi_par in [%.3f, %.3f])",
                     scan.min_eigenvalue, scan.f_threshold,
                     scan.min_reduced_eigenvalue, scan.xi_par_min, scan.xi_par_max);
    } catch (const Error& e) {
        detail = std::string("(") + e.kind_name() + ": " + e.what() + ")";
    }
    report(8, "energy-current positive definiteness", pass, detail);
}

// -------------------------------------------------------------------------
// 9. differential-identity residuals converge at order >= 3.5
// -------------------------------------------------------------------------
void criterion_9(Scenario& sc) {
    begin();
    const KernelConvergence kc =
        check_kernel_convergence(sc.solution(), sc.map(), 16, 3, 0.04, 20260809);
    const bool pass = kc.order_vort >= 3.5 && kc.order_eikonal >= 3.5
                   && kc.order_wave >= 3.5 && kc.order_constraint >= 3.5;
    report(9, "finite-difference residual convergence", pass,
           fmt("(orders: curl-of-gradient %.2f, eikonal %.2f, wave %.2f, "
               "constraint %.2f, all >= 3.5)",
               kc.order_vort, kc.order_eikonal, kc.order_wave, kc.order_constraint));
}

} // namespace

int main() {
    std::printf("acceptance suite: default scenario (constant c = 1/2, H_bar = 1, "
                "eps0 = 0.1)\n");
    Scenario sc = Scenario::defaults();
    // force construction outside the timed sections
    (void)sc.map();

    criterion_1(sc);
    criterion_2(sc);
    criterion_3(sc);
    criterion_4(sc);
    criterion_5(sc);
    criterion_6(sc);
    criterion_7(sc);
    criterion_8(sc);
    criterion_9(sc);

    if (g_failures == 0)
        std::printf("all 9 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
