// Command-line driver: scenario orchestration, serialization, and plots.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relshock/checks.hpp"
#include "relshock/errors.hpp"
#include "relshock/io.hpp"
#include "relshock/oracle_solver.hpp"
#include "relshock/scenario.hpp"
#include "relshock/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace relshock;
using io::json;

namespace {

json report_to_json(const Report& rep) {
    json out;
    out["all_pass"] = rep.all_pass();
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        j["observed"] = {c.observed_lo, c.observed_hi};
        j["bounds"] = {c.bound_lo, c.bound_hi};
        if (!c.note.empty()) j["note"] = c.note;
        checks.push_back(j);
    }
    out["checks"] = checks;
    return out;
}

json certification_json(const InitialData& d) {
    const Certification& c = d.certification();
    json j;
    j["eps"] = d.eps();
    j["delta_star"] = d.delta_star();
    j["b_coeff"] = d.b_coeff();
    j["p_coeff"] = d.p_coeff();
    j["T_shock"] = d.T_shock();
    j["U_center"] = d.U_center();
    j["U_rad"] = c.U_rad;
    j["c_frak"] = c.c_frak;
    j["C_frak"] = c.C_frak;
    j["brackets"] = {
        {"G_plus_delta_over_x2", {c.G_plus_delta_over_x2.lo, c.G_plus_delta_over_x2.hi}},
        {"dG_over_x", {c.dG_over_x.lo, c.dG_over_x.hi}},
        {"minus_G_over_delta", {c.minus_G_over_delta.lo, c.minus_G_over_delta.hi}},
        {"XXmu_at_Tshock", {c.XXmu_at_Tshock.lo, c.XXmu_at_Tshock.hi}},
    };
    j["Xmu_zero_max_abs_x"] = c.Xmu_zero_max_abs_x;
    j["Xmu_outer_band_min"] = c.Xmu_outer_band_min;
    j["exterior_mu_min"] = c.exterior_mu_min;
    j["taylor_remainder_sup"] = c.taylor_remainder_sup;
    return j;
}

struct Common {
    std::string scenario_path;
    std::string out_dir = "out";
    int workers = 0;

    Scenario load() const {
        const char* env = std::getenv("RELSHOCK_SCENARIO");
        std::string path = scenario_path;
        if (path.empty() && env && *env) path = env;
        Scenario sc = path.empty() ? Scenario::defaults()
                                   : Scenario::from_config(KeyValueConfig::parse_file(path));
        fs::create_directories(out_dir);
        return sc;
    }
    std::string out(const std::string& name) const {
        return (fs::path(out_dir) / name).string();
    }
};

void cmd_seed(const Common& cm) {
    Scenario sc = cm.load();
    const InitialData& d = sc.data();
    json j = certification_json(d);
    j["eos_kind"] = sc.eos().kind();
    j["profile"] = d.profile().kind;
    j["support"] = {d.support_lo(), d.support_hi()};
    io::write_json(cm.out("seed.json"), j);
    std::cout << j.dump(2) << "\n";
}

void cmd_solve_geo(const Common& cm, int nt, int nu, double t_max_factor) {
    Scenario sc = cm.load();
    const GeometricSolution& sol = sc.solution();
    const double T = sol.T_shock();
    const double Ur = sol.U_rad();
    const double c0 = sol.U_center();
    io::CsvWriter csv(cm.out("geo.csv"),
                      {"t", "U", "R_plus", "mu", "L_mu", "Xbreve_mu", "XX_mu",
                       "partial1_Rplus"});
    for (int i = 0; i <= nt; ++i) {
        const double t = t_max_factor * T * i / nt;
        for (int j = 0; j <= nu; ++j) {
            const double U = c0 - Ur + 2.0 * Ur * j / nu;
            double p1 = 0.0;
            bool singular = false;
            try {
                p1 = sol.partial1_Rplus(t, U);
            } catch (const Error&) {
                singular = true;
            }
            csv.row({t, U, sol.R_plus(t, U), sol.mu(t, U), sol.L_mu(U),
                     sol.Xbreve_mu(t, U), sol.XX_mu(t, U),
                     singular ? std::numeric_limits<double>::infinity() : p1});
        }
    }
    csv.close();
    std::cout << "wrote " << cm.out("geo.csv") << "\n";
}

void cmd_boundary(const Common& cm, int nu) {
    Scenario sc = cm.load();
    auto b = sc.boundary();
    const double Ur = sc.solution().U_rad();
    const double c0 = sc.solution().U_center();
    json j;
    j["T_shock"] = sc.data().T_shock();
    j["crease"] = {{"t", b->crease().t}, {"U", b->crease().U}};
    io::write_json(cm.out("boundary.json"), j);

    io::CsvWriter sing(cm.out("sing_curve.csv"), {"U", "t_sing"});
    for (int i = 0; i <= nu; ++i) {
        const double U = c0 - Ur + Ur * i / nu;
        sing.row({U, b->t_sing(U)});
    }
    sing.close();
    io::CsvWriter ch(cm.out("cauchy_horizon.csv"), {"U", "t_ch", "mu_on_ch"});
    for (int i = 0; i <= nu; ++i) {
        const double U = c0 + Ur * i / nu;
        ch.row({U, b->t_ch(U), b->mu_on_ch(U)});
    }
    ch.close();
    std::cout << j.dump(2) << "\n";
}

void plot_geo_regions(const Common& cm, Scenario& sc) {
    auto b = sc.boundary();
    const double T = sc.data().T_shock();
    const double Ur = sc.solution().U_rad();
    const double c0 = sc.solution().U_center();
    io::SvgPlot svg(c0 - 1.2 * Ur, c0 + 1.2 * Ur, 0.0, 1.35 * T);
    svg.title("development regions in geometric coordinates");
    svg.axes("U", "t");
    std::vector<std::pair<double, double>> sing, fict, hor;
    for (int i = 0; i <= 256; ++i) {
        const double U = c0 - Ur + Ur * i / 256.0;
        sing.emplace_back(U, b->t_sing(U));
        const double Uf = c0 + Ur * i / 256.0;
        fict.emplace_back(Uf, b->t_sing_unrestricted(Uf));
        hor.emplace_back(Uf, b->t_ch(Uf));
    }
    svg.polyline(sing, "#c0392b", 2.0);
    svg.polyline(fict, "#c0392b", 1.0, true);
    svg.polyline(hor, "#2980b9", 2.0);
    svg.polyline({{c0 - Ur, 0.0}, {c0 + Ur, 0.0}}, "#555555", 1.0);
    svg.marker(c0, T, "#000000");
    svg.label(c0 + 0.03 * Ur, 1.04 * T, "crease");
    svg.label(c0 - Ur, 1.2 * T, "singular curve");
    svg.label(c0 + 0.45 * Ur, 0.92 * T, "Cauchy horizon");
    svg.label(c0 - 0.5 * Ur, 0.4 * T, "M_sing");
    svg.label(c0 + 0.4 * Ur, 0.4 * T, "M_reg");
    svg.save(cm.out("regions_geo.svg"));
}

void plot_rect(const Common& cm, Scenario& sc) {
    auto b = sc.boundary();
    const CoordinateMap& map = sc.map();
    const double T = sc.data().T_shock();
    const double Ur = sc.solution().U_rad();
    const double c0 = sc.solution().U_center();
    const double x_lo = map.x1(1.3 * T, c0 + Ur) - 0.2;
    const double x_hi = map.x1(0.0, c0 - Ur) + 0.6;
    io::SvgPlot svg(x_lo, x_hi, 0.0, 1.35 * T);
    svg.title("image of the development with characteristics");
    svg.axes("x1", "t");
    // characteristics: straight lines grazing the top boundary
    for (int k = 0; k <= 24; ++k) {
        const double U = c0 - Ur + 2.0 * Ur * k / 24.0;
        const double t_top = (U <= c0) ? b->t_sing(U) : b->t_ch(U);
        std::vector<std::pair<double, double>> line;
        for (int i = 0; i <= 32; ++i) {
            const double t = t_top * i / 32.0;
            line.emplace_back(map.x1(t, U), t);
        }
        svg.polyline(line, "#999999", 0.8);
    }
    std::vector<std::pair<double, double>> sing, hor;
    for (int i = 0; i <= 256; ++i) {
        const double U = c0 - Ur + Ur * i / 256.0;
        sing.emplace_back(map.x1(b->t_sing(U), U), b->t_sing(U));
        const double Uf = c0 + Ur * i / 256.0;
        hor.emplace_back(map.x1(b->t_ch(Uf), Uf), b->t_ch(Uf));
    }
    svg.polyline(sing, "#c0392b", 2.2);
    svg.polyline(hor, "#2980b9", 2.2);
    svg.marker(map.x1(T, c0), T, "#000000");
    svg.label(map.x1(T, c0), 1.06 * T, "crease");
    svg.label(sing.back().first, 1.25 * T, "singular boundary");
    svg.label(hor.back().first - 0.3, 0.9 * T, "Cauchy horizon");
    svg.save(cm.out("regions_rect.svg"));
}

void cmd_map(const Common& cm, int nt, int nu) {
    Scenario sc = cm.load();
    const CoordinateMap& map = sc.map();
    const double T = sc.data().T_shock();
    const double Ur = sc.solution().U_rad();
    const double c0 = sc.solution().U_center();
    io::CsvWriter csv(cm.out("map.csv"), {"t", "U", "x1", "jac_det"});
    for (int i = 0; i <= nt; ++i) {
        const double t = T * i / nt;
        for (int j = 0; j <= nu; ++j) {
            const double U = c0 - Ur + 2.0 * Ur * j / nu;
            csv.row({t, U, map.x1(t, U), map.jacobian_det(t, U)});
        }
    }
    csv.close();
    const auto audit =
        map.injectivity_audit(*sc.boundary(), 200, 200, std::max(1, cm.workers));
    json aj;
    aj["pass"] = audit.pass;
    aj["rows_monotone"] = audit.rows_monotone;
    aj["top_monotone"] = audit.top_monotone;
    aj["sing_curve_sign_ok"] = audit.sing_curve_sign_ok;
    aj["horizon_sign_ok"] = audit.horizon_sign_ok;
    aj["collisions"] = audit.collisions;
    aj["min_gap"] = audit.min_gap;
    aj["collision_tol"] = audit.collision_tol;
    io::write_json(cm.out("map_audit.json"), aj);
    plot_rect(cm, sc);
    std::cout << "wrote " << cm.out("map.csv") << ", " << cm.out("map_audit.json")
              << ", " << cm.out("regions_rect.svg") << "\n";
}

void cmd_plot(const Common& cm) {
    Scenario sc = cm.load();
    const InitialData& d = sc.data();
    {
        double y_lo = 0.0, y_hi = 0.0;
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i <= 512; ++i) {
            const double U = d.support_lo() - 0.2
                           + (d.support_hi() - d.support_lo() + 0.4) * i / 512.0;
            const double y = d.phi(U);
            pts.emplace_back(U, y);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
        io::SvgPlot svg(d.support_lo() - 0.2, d.support_hi() + 0.2, 1.2 * y_lo - 0.01,
                        1.2 * y_hi + 0.01);
        svg.title("seed profile");
        svg.axes("U", "phi");
        svg.polyline(pts, "#27ae60", 2.0);
        svg.save(cm.out("seed_profile.svg"));
    }
    plot_geo_regions(cm, sc);
    plot_rect(cm, sc);
    std::cout << "wrote seed_profile.svg, regions_geo.svg, regions_rect.svg in "
              << cm.out_dir << "\n";
}

void cmd_oracle(const Common& cm, double dx, double cfl, double t_end,
                const std::string& scheme, bool blowup, int levels) {
    Scenario sc = cm.load();
    const InitialData& d = sc.data();
    if (blowup) {
        LadderOptions lo;
        lo.dx_finest = dx > 0.0 ? dx : (d.support_hi() - d.support_lo()) / 8192.0;
        lo.levels = levels;
        lo.cfl = cfl;
        lo.scheme = scheme;
        const BlowupEstimate est = estimate_blowup_time(d, lo);
        json j;
        j["t_estimate"] = est.t_estimate;
        j["uncertainty"] = est.uncertainty;
        j["T_shock_closed_form"] = d.T_shock();
        j["relative_deviation"] = est.t_estimate / d.T_shock() - 1.0;
        json lv = json::array();
        for (const auto& L : est.levels)
            lv.push_back({{"dx", L.dx},
                          {"t_extrapolated", L.t_extrapolated},
                          {"thresholds", L.thresholds},
                          {"crossing_times", L.crossing_times}});
        j["levels"] = lv;
        io::write_json(cm.out("blowup.json"), j);
        std::cout << j.dump(2) << "\n";
        return;
    }
    OracleOptions oo;
    oo.dx = dx > 0.0 ? dx : 1e-2;
    oo.cfl = cfl;
    oo.scheme = scheme;
    const RectangularOracleRun run = evolve(d, oo, t_end);
    io::CsvWriter csv(cm.out("oracle.csv"), {"x", "r_plus", "r_minus"});
    for (std::size_t i = 0; i < run.x.size(); ++i)
        csv.row({run.x[i], run.r_plus[i], run.r_minus[i]});
    csv.close();
    json j;
    j["dx"] = run.dx;
    j["dt"] = run.dt;
    j["t_final"] = run.t_final;
    j["initial_max_grad"] = run.initial_max_grad;
    j["final_max_grad"] = run.grad_history.back().second;
    j["simd"] = simd::active().name;
    io::write_json(cm.out("oracle.json"), j);
    std::cout << j.dump(2) << "\n";
}

void cmd_compare(const Common& cm, double dx, double cfl, double t_end,
                 const std::string& scheme, int levels) {
    Scenario sc = cm.load();
    const InitialData& d = sc.data();
    const double t = t_end > 0.0 ? t_end : 0.5 * d.T_shock();
    const double dx0 = dx > 0.0 ? dx : (d.support_hi() - d.support_lo()) / 512.0;
    json rows = json::array();
    double prev_l1 = 0.0;
    for (int lev = 0; lev < levels; ++lev) {
        OracleOptions oo;
        oo.dx = dx0 / std::pow(2.0, lev);
        oo.cfl = cfl;
        oo.scheme = scheme;
        const RectangularOracleRun run = evolve(d, oo, t);
        const CompareResult res = compare_with_geometric(run, sc.solution(), sc.map());
        json r;
        r["dx"] = oo.dx;
        r["linf"] = res.linf;
        r["l1"] = res.l1;
        r["excluded"] = res.excluded;
        if (lev > 0) r["l1_ratio"] = prev_l1 / res.l1;
        prev_l1 = res.l1;
        rows.push_back(r);
    }
    json j;
    j["t"] = t;
    j["scheme"] = scheme;
    j["levels"] = rows;
    io::write_json(cm.out("compare.json"), j);
    std::cout << j.dump(2) << "\n";
}

int cmd_check(const Common& cm, const std::string& what, int samples,
              std::uint64_t seed, const KBounds& K) {
    Scenario sc = cm.load();
    Report rep;
    std::string file;
    if (what == "identities") {
        IdentityOptions io_;
        io_.seed = seed;
        io_.workers = std::max(1, cm.workers);
        rep = check_identities(sc.eos(), io_);
        file = "check_identities.json";
    } else if (what == "energy-current") {
        rep = check_energy_current(sc.eos(), K, samples, seed);
        file = "check_energy_current.json";
    } else if (what == "kernels") {
        const KernelConvergence kc =
            check_kernel_convergence(sc.solution(), sc.map(), 12, 3, 0.04, seed);
        json j;
        j["h"] = kc.h;
        j["residuals"] = {{"vort_gradient", kc.vort_gradient},
                          {"eikonal", kc.eikonal},
                          {"wave", kc.wave},
                          {"constraint", kc.constraint}};
        j["orders"] = {{"vort_gradient", kc.order_vort},
                       {"eikonal", kc.order_eikonal},
                       {"wave", kc.order_wave},
                       {"constraint", kc.order_constraint}};
        const bool pass = kc.order_vort >= 3.5 && kc.order_eikonal >= 3.5
                       && kc.order_wave >= 3.5 && kc.order_constraint >= 3.5;
        j["all_pass"] = pass;
        Report emb = check_embedding_consistency(sc.solution(), sc.map());
        j["embedding"] = report_to_json(emb);
        io::write_json(cm.out("check_kernels.json"), j);
        std::cout << j.dump(2) << "\n";
        return (pass && emb.all_pass()) ? 0 : 1;
    } else if (what == "sharp-estimates") {
        rep = sc.solution().verify_sharp_estimates();
        json j = report_to_json(rep);
        j["certification"] = certification_json(sc.data());
        io::write_json(cm.out("check_sharp_estimates.json"), j);
        std::cout << j.dump(2) << "\n";
        return rep.all_pass() ? 0 : 1;
    } else {
        fail(ErrorKind::config, "unknown check: " + what);
    }
    const json j = report_to_json(rep);
    io::write_json(cm.out(file), j);
    std::cout << j.dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shock-forming simple-wave development toolkit"};
    app.require_subcommand(1);

    Common cm;
    app.add_option("--scenario", cm.scenario_path,
                   "scenario config file (default: RELSHOCK_SCENARIO or built-ins)");
    app.add_option("--out", cm.out_dir, "output directory");
    app.add_option("--workers", cm.workers, "worker threads for grid sweeps");

    auto* seed_cmd = app.add_subcommand("seed", "build + certify the initial data");

    int nt = 64, nu = 128;
    double t_max_factor = 1.0;
    auto* geo = app.add_subcommand("solve-geo", "sample the closed-form solution");
    geo->add_option("--nt", nt, "time samples");
    geo->add_option("--nu", nu, "U samples");
    geo->add_option("--t-max-factor", t_max_factor,
                    "sample up to this multiple of T_shock");

    int bnu = 256;
    auto* bnd = app.add_subcommand("boundary", "singular curve, crease, Cauchy horizon");
    bnd->add_option("--nu", bnu, "curve samples");

    int mnt = 64, mnu = 128;
    auto* mp = app.add_subcommand("map", "coordinate map tables and overlay plot");
    mp->add_option("--nt", mnt, "time samples");
    mp->add_option("--nu", mnu, "U samples");

    double dx = 0.0, cfl = 0.45, t_end = 1.0;
    std::string scheme = "upwind";
    bool blowup = false;
    int levels = 4;
    auto* orc = app.add_subcommand("oracle", "rectangular-coordinate evolution");
    orc->add_option("--dx", dx, "mesh spacing");
    orc->add_option("--cfl", cfl, "Courant number");
    orc->add_option("--t-end", t_end, "final time");
    orc->add_option("--scheme", scheme, "upwind | minmod")
        ->check(CLI::IsMember({"upwind", "minmod"}));
    orc->add_flag("--blowup", blowup, "estimate the blowup time on a mesh ladder");
    orc->add_option("--levels", levels, "ladder levels for --blowup");

    double cdx = 0.0, ccfl = 0.45, ct_end = 0.0;
    std::string cscheme = "upwind";
    int clevels = 3;
    auto* cmp = app.add_subcommand("compare", "oracle vs geometric pushforward");
    cmp->add_option("--dx", cdx, "coarsest mesh spacing");
    cmp->add_option("--cfl", ccfl, "Courant number");
    cmp->add_option("--t-end", ct_end, "comparison time (default T_shock/2)");
    cmp->add_option("--scheme", cscheme, "upwind | minmod")
        ->check(CLI::IsMember({"upwind", "minmod"}));
    cmp->add_option("--levels", clevels, "refinement levels");

    std::string what;
    int samples = 1000;
    std::uint64_t seed = 20260809;
    KBounds K;
    auto* chk = app.add_subcommand("check", "verification suites");
    chk->add_option("what", what,
                    "identities | energy-current | kernels | sharp-estimates")
        ->required()
        ->check(CLI::IsMember(
            {"identities", "energy-current", "kernels", "sharp-estimates"}));
    chk->add_option("--samples", samples, "sample count");
    chk->add_option("--seed", seed, "random seed");
    chk->add_option("--k-h", K.h_abs, "state set bound on |h|");
    chk->add_option("--k-u", K.u_abs, "state set bound on |u^i|");
    chk->add_option("--k-s", K.s_abs, "state set bound on |s|");
    chk->add_option("--k-xi", K.xi_spatial, "spatial-to-time ratio bound for xi");

    auto* plt = app.add_subcommand("plot", "emit the scenario plots");

    CLI11_PARSE(app, argc, argv);

    try {
        if (seed_cmd->parsed()) cmd_seed(cm);
        else if (geo->parsed()) cmd_solve_geo(cm, nt, nu, t_max_factor);
        else if (bnd->parsed()) cmd_boundary(cm, bnu);
        else if (mp->parsed()) cmd_map(cm, mnt, mnu);
        else if (orc->parsed()) cmd_oracle(cm, dx, cfl, t_end, scheme, blowup, levels);
        else if (cmp->parsed()) cmd_compare(cm, cdx, ccfl, ct_end, cscheme, clevels);
        else if (chk->parsed()) return cmd_check(cm, what, samples, seed, K);
        else if (plt->parsed()) cmd_plot(cm);
    } catch (const Error& e) {
        json j;
        j["error"] = {{"kind", e.kind_name()}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return e.kind() == ErrorKind::config ? 2 : 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = {{"kind", "Unexpected"}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return 0;
}
