#include "relshock/oracle_solver.hpp"

#include <algorithm>
#include <cmath>

#include "relshock/errors.hpp"
#include "relshock/fluid_state.hpp"
#include "relshock/numerics.hpp"
#include "relshock/simd/kernels.hpp"

namespace relshock {

namespace {

// Working arrays carry one ghost cell on each side; interior pointers are
// offset by +1 so kernels may read index -1 and n.
struct Mesh {
    std::size_t n = 0;
    double x_lo = 0.0, dx = 0.0;
    std::vector<double> rp, rm;     // fields with ghosts
    std::vector<double> s1p, s1m;   // Heun stage buffers
    std::vector<double> s2p, s2m;
    std::vector<double> v, c, lp, lm, sigp, sigm;

    double* interior(std::vector<double>& a) { return a.data() + 1; }
    const double* interior(const std::vector<double>& a) const { return a.data() + 1; }
};

struct Stepper {
    const Eos* eos = nullptr;
    const simd::Kernels* k = nullptr;
    bool minmod = false;
    bool const_c = false;
    double c_bar = 0.0;

    void speeds(Mesh& m, const std::vector<double>& rp, const std::vector<double>& rm) const {
        const std::size_t n = m.n;
        const double* p = rp.data() + 1;
        const double* q = rm.data() + 1;
        for (std::size_t i = 0; i < n; ++i) m.v[i] = std::tanh(0.5 * (p[i] - q[i]));
        if (const_c) {
            k->char_speeds_const(m.v.data(), c_bar, m.lp.data(), m.lm.data(), n);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                m.c[i] = eos->sound_speed(eos->F_inv(0.5 * (p[i] + q[i])));
            k->char_speeds(m.v.data(), m.c.data(), m.lp.data(), m.lm.data(), n);
        }
    }

    // out = in + dt L(in) for both fields
    void stage(Mesh& m, const std::vector<double>& inp, const std::vector<double>& inm,
               std::vector<double>& outp, std::vector<double>& outm, double nu) const {
        speeds(m, inp, inm);
        const std::size_t n = m.n;
        if (minmod) {
            k->minmod_slopes(inp.data() + 1, m.sigp.data() + 1, n);
            k->minmod_slopes(inm.data() + 1, m.sigm.data() + 1, n);
            // slope ghost cells: flat extension
            m.sigp[0] = m.sigp[1];
            m.sigp[n + 1] = m.sigp[n];
            m.sigm[0] = m.sigm[1];
            m.sigm[n + 1] = m.sigm[n];
            k->muscl_step(inp.data() + 1, m.sigp.data() + 1, m.lp.data(), nu,
                          outp.data() + 1, n);
            k->muscl_step(inm.data() + 1, m.sigm.data() + 1, m.lm.data(), nu,
                          outm.data() + 1, n);
        } else {
            k->upwind_step(inp.data() + 1, m.lp.data(), nu, outp.data() + 1, n);
            k->upwind_step(inm.data() + 1, m.lm.data(), nu, outm.data() + 1, n);
        }
        // constant-state extension at the domain edges
        outp[0] = inp[0];
        outp[n + 1] = inp[n + 1];
        outm[0] = inm[0];
        outm[n + 1] = inm[n + 1];
    }
};

struct Driver {
    Mesh m;
    Stepper st;
    double dt = 0.0;
    double t = 0.0;
    double guard = 0.0; // gradient ceiling

    double max_grad() const {
        return simd::active().max_abs_jump(m.rp.data() + 1, m.n) / m.dx;
    }

    void step(double h) {
        const double nu = h / m.dx;
        st.stage(m, m.rp, m.rm, m.s1p, m.s1m, nu);
        st.stage(m, m.s1p, m.s1m, m.s2p, m.s2m, nu);
        double* rp = m.rp.data();
        double* rm = m.rm.data();
        const double* s2p = m.s2p.data();
        const double* s2m = m.s2m.data();
        for (std::size_t i = 0; i < m.n + 2; ++i) {
            rp[i] = 0.5 * (rp[i] + s2p[i]);
            rm[i] = 0.5 * (rm[i] + s2m[i]);
        }
        t += h;
    }
};

Driver make_driver(const InitialData& data, const OracleOptions& opt, double t_reach) {
    if (opt.cfl > 0.9) fail(ErrorKind::cfl_violation, "CFL must not exceed 0.9");
    if (!(opt.dx > 0.0)) fail(ErrorKind::config, "oracle: dx must be positive");
    if (opt.scheme != "upwind" && opt.scheme != "minmod")
        fail(ErrorKind::config, "oracle: scheme must be 'upwind' or 'minmod'");

    Driver d;
    d.st.eos = &data.eos();
    d.st.k = &simd::active();
    d.st.minmod = opt.scheme == "minmod";
    d.st.const_c = data.eos().is_constant();
    if (d.st.const_c) d.st.c_bar = data.eos().sound_speed(data.eos().H_bar());

    // data support in x at t = 0 is the mirrored U support (U = -x)
    const double x_support_lo = -data.support_hi();
    const double x_support_hi = -data.support_lo();

    // maximum signal speeds over the initial data
    double s_max = 0.0, s_right = 0.0, s_left = 0.0;
    const int probes = 512;
    for (int i = 0; i <= probes; ++i) {
        const double U = data.support_lo()
                       + (data.support_hi() - data.support_lo()) * i / probes;
        const auto fr = null_frame(data.state(U));
        s_right = std::max(s_right, fr.L1);
        s_left = std::min(s_left, fr.Lbar1);
        s_max = std::max({s_max, std::abs(fr.L1), std::abs(fr.Lbar1)});
    }
    if (opt.initial_fields) {
        // custom fields may populate either family anywhere in the domain;
        // all speeds are subluminal, so 1 is a safe CFL bound
        s_max = 1.0;
        s_right = 1.0;
        s_left = -1.0;
    }
    double x_lo = x_support_lo + std::min(0.0, s_left) * t_reach - opt.margin;
    double x_hi = x_support_hi + std::max(0.0, s_right) * t_reach + opt.margin;
    if (!std::isnan(opt.x_lo_override)) x_lo = opt.x_lo_override;
    if (!std::isnan(opt.x_hi_override)) x_hi = opt.x_hi_override;

    Mesh& m = d.m;
    m.dx = opt.dx;
    m.n = (std::size_t)std::ceil((x_hi - x_lo) / opt.dx) + 1;
    m.x_lo = x_lo;
    const std::size_t alloc = m.n + 2;
    for (auto* a : {&m.rp, &m.rm, &m.s1p, &m.s1m, &m.s2p, &m.s2m})
        a->assign(alloc, 0.0);
    for (auto* a : {&m.v, &m.c, &m.lp, &m.lm})
        a->assign(m.n, 0.0);
    m.sigp.assign(alloc, 0.0);
    m.sigm.assign(alloc, 0.0);
    double* rp = m.interior(m.rp);
    double* rm = m.interior(m.rm);
    for (std::size_t i = 0; i < m.n; ++i) {
        const double x = x_lo + i * m.dx;
        if (opt.initial_fields) {
            const auto [a, b] = opt.initial_fields(x);
            rp[i] = a;
            rm[i] = b;
        } else {
            rp[i] = data.R0(-x);
        }
    }
    m.rp[0] = rp[0];
    m.rp[m.n + 1] = rp[m.n - 1];
    m.rm[0] = rm[0];
    m.rm[m.n + 1] = rm[m.n - 1];

    d.dt = opt.cfl * opt.dx / std::max(s_max, 1e-12);
    d.guard = 1.0 / (opt.resolution_guard * opt.dx);
    return d;
}

RectangularOracleRun finish_run(const Driver& d) {
    RectangularOracleRun run;
    run.dx = d.m.dx;
    run.dt = d.dt;
    run.t_final = d.t;
    run.x.resize(d.m.n);
    run.r_plus.assign(d.m.rp.begin() + 1, d.m.rp.begin() + 1 + d.m.n);
    run.r_minus.assign(d.m.rm.begin() + 1, d.m.rm.begin() + 1 + d.m.n);
    for (std::size_t i = 0; i < d.m.n; ++i) run.x[i] = d.m.x_lo + i * d.m.dx;
    return run;
}

} // namespace

RectangularOracleRun evolve(const InitialData& data, const OracleOptions& opt,
                            double t_end) {
    Driver d = make_driver(data, opt, t_end);
    RectangularOracleRun meta;
    meta.initial_max_grad = d.max_grad();
    std::vector<std::pair<double, double>> hist{{0.0, meta.initial_max_grad}};
    long step_i = 0;
    while (d.t < t_end) {
        const double h = std::min(d.dt, t_end - d.t);
        d.step(h);
        ++step_i;
        if (step_i % opt.grad_stride == 0 || d.t >= t_end) {
            const double g = d.max_grad();
            hist.emplace_back(d.t, g);
            if (g > d.guard)
                fail(ErrorKind::resolution_exhausted,
                     "monitored gradient exceeded the resolvable range");
        }
    }
    RectangularOracleRun run = finish_run(d);
    run.initial_max_grad = meta.initial_max_grad;
    run.grad_history = std::move(hist);
    return run;
}

ThresholdCrossings evolve_until_thresholds(const InitialData& data,
                                           const OracleOptions& opt,
                                           const std::vector<double>& grad_thresholds,
                                           double t_cap) {
    Driver d = make_driver(data, opt, t_cap);
    ThresholdCrossings out;
    out.thresholds = grad_thresholds;
    out.times.assign(grad_thresholds.size(), std::nan(""));
    double g_prev = d.max_grad(), t_prev = 0.0;
    const double g0 = g_prev;
    std::vector<std::pair<double, double>> hist{{0.0, g0}};
    bool exhausted = false;
    double t_exhausted = 0.0;
    while (d.t < t_cap) {
        const double h = std::min(d.dt, t_cap - d.t);
        d.step(h);
        const double g = d.max_grad();
        hist.emplace_back(d.t, g);
        for (std::size_t k = 0; k < grad_thresholds.size(); ++k) {
            if (std::isnan(out.times[k]) && g_prev < grad_thresholds[k]
                && g >= grad_thresholds[k]) {
                const double frac = (grad_thresholds[k] - g_prev) / (g - g_prev);
                out.times[k] = t_prev + frac * (d.t - t_prev);
            }
        }
        if (g > d.guard) {
            exhausted = true;
            t_exhausted = d.t;
            break;
        }
        bool all = true;
        for (double tk : out.times)
            if (std::isnan(tk)) all = false;
        if (all) break;
        g_prev = g;
        t_prev = d.t;
    }
    out.run = finish_run(d);
    out.run.initial_max_grad = g0;
    out.run.grad_history = std::move(hist);
    out.run.resolution_exhausted = exhausted;
    out.run.t_resolution_exhausted = t_exhausted;
    return out;
}

CompareResult compare_with_geometric(const RectangularOracleRun& run,
                                     const GeometricSolution& sol,
                                     const CoordinateMap& map) {
    const double t = run.t_final;
    UpsilonSlice slice = map.make_inverse_slice(t);
    CompareResult res;
    std::vector<double> geo(run.x.size(), 0.0), ora(run.x.size(), 0.0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < run.x.size(); ++i) {
        if (!slice.contains(run.x[i])) {
            ++res.excluded;
            continue;
        }
        const double U = slice.invert(run.x[i]).U;
        geo[kept] = sol.R_plus(t, U);
        ora[kept] = run.r_plus[i];
        ++kept;
    }
    const auto& k = simd::active();
    res.linf = k.linf_diff(geo.data(), ora.data(), kept);
    res.l1 = k.l1_diff(geo.data(), ora.data(), kept) * run.dx;
    return res;
}

BlowupEstimate estimate_blowup_time(const InitialData& data, const LadderOptions& opt) {
    if (opt.levels < 3)
        fail(ErrorKind::config, "blowup ladder needs at least 3 refinements");
    const double support = data.support_hi() - data.support_lo();
    const double dx0 = opt.dx_finest > 0.0 ? opt.dx_finest : support / 8192.0;
    const double t_cap = opt.t_cap_factor * data.T_shock();

    BlowupEstimate est;
    for (int lev = opt.levels - 1; lev >= 0; --lev) {
        OracleOptions oo;
        oo.dx = dx0 * std::pow(2.0, lev);
        oo.cfl = opt.cfl;
        oo.scheme = opt.scheme;

        // threshold schedule relative to this level's initial max gradient
        Driver probe = make_driver(data, oo, t_cap);
        const double g0 = probe.max_grad();
        std::vector<double> thresholds;
        for (double f : opt.threshold_factors) thresholds.push_back(f * g0);

        ThresholdCrossings tc = evolve_until_thresholds(data, oo, thresholds, t_cap);
        std::vector<double> inv_k, tk;
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (!std::isnan(tc.times[i])) {
                inv_k.push_back(g0 / thresholds[i]); // 1/threshold factor
                tk.push_back(tc.times[i]);
            }
        }
        if (inv_k.size() < 2)
            fail(ErrorKind::resolution_exhausted,
                 "fewer than two thresholds were crossed at dx = " + std::to_string(oo.dx));
        const int deg = inv_k.size() >= 3 ? 2 : 1;
        const auto fit = num::polyfit(inv_k, tk, deg);
        BlowupEstimate::Level level;
        level.dx = oo.dx;
        level.t_extrapolated = fit[0];
        level.thresholds = thresholds;
        level.crossing_times = tc.times;
        est.levels.push_back(std::move(level));
    }

    // Levels that crossed the full schedule have comparable extrapolations;
    // coarser levels (fewer resolvable thresholds) are reported but do not
    // participate in the ordering gate or the Richardson step.
    std::vector<double> full;
    for (const auto& L : est.levels) {
        bool complete = true;
        for (double t : L.crossing_times)
            if (std::isnan(t)) complete = false;
        if (complete) full.push_back(L.t_extrapolated);
    }
    if (full.size() < 2)
        fail(ErrorKind::resolution_exhausted,
             "fewer than two ladder levels resolved the full threshold schedule");
    const double slack = opt.monotone_slack * data.T_shock();
    for (std::size_t i = 1; i < full.size(); ++i) {
        // estimates should approach the limit monotonically under refinement
        if ((full.back() - full.front() > 0.0) ? (full[i] < full[i - 1] - slack)
                                               : (full[i] > full[i - 1] + slack))
            fail(ErrorKind::non_monotone_ladder,
                 "blowup-time estimates do not order monotonically across the ladder");
    }

    const double t1 = full[full.size() - 1]; // finest
    const double t2 = full[full.size() - 2];
    est.t_estimate = 2.0 * t1 - t2; // first-order Richardson
    double spread = std::abs(est.t_estimate - t1);
    if (full.size() >= 3) {
        const double t3 = full[full.size() - 3];
        spread += std::abs((2.0 * t1 - t2) - (2.0 * t2 - t3));
    }
    est.uncertainty = spread;
    return est;
}

} // namespace relshock
