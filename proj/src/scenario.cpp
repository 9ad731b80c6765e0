#include "relshock/scenario.hpp"

#include <cmath>

#include "relshock/errors.hpp"

namespace relshock {

ThermoCallbacks make_thermo(double n0, double a_n, double theta0, double a_t,
                            double b_t) {
    ThermoCallbacks t;
    t.n = [n0, a_n](double h, double) { return n0 * std::exp(a_n * h); };
    t.theta = [theta0, a_t, b_t](double h, double s) {
        return theta0 * std::exp(a_t * h + b_t * s);
    };
    t.theta_h = [theta0, a_t, b_t](double h, double s) {
        return a_t * theta0 * std::exp(a_t * h + b_t * s);
    };
    return t;
}

KeyValueConfig Scenario::default_config() {
    return KeyValueConfig::parse_string(R"(# default scenario
eos.kind = constant
eos.c = 0.5
eos.H_bar = 1.0
eos.H_min = 0.05
eos.H_max = 20.0
eos.r_max = 1.5
thermo.enabled = true
thermo.n0 = 1.0
thermo.a_n = 1.0
thermo.theta0 = 0.3
thermo.a_t = 1.0
thermo.b_t = 0.5
seed.profile = plateau-cubic
seed.eps0 = 0.1
seed.U1 = 2.0
seed.U2 = 2.0
seed.center = 0.0
grid.support_points = 4096
grid.crease_points = 1024
cert.kappa_floor = 0.9
cert.U_rad_min = 0.05
workers = 1
)");
}

Scenario Scenario::defaults() { return from_config(default_config()); }

Scenario Scenario::from_config(const KeyValueConfig& cfg) {
    Scenario sc;

    EosOptions eo;
    eo.H_min = cfg.get_double("eos.H_min", 0.05);
    eo.H_max = cfg.get_double("eos.H_max", 20.0);
    eo.r_max = cfg.get_double("eos.r_max", 1.5);
    const std::string kind = cfg.get_string("eos.kind", "constant");
    const double H_bar = cfg.get_double("eos.H_bar", 1.0);
    if (kind == "constant") {
        sc.eos_ = Eos::constant(cfg.get_double("eos.c", 0.5), H_bar, eo);
    } else if (kind == "powerlaw") {
        sc.eos_ = Eos::power_law(cfg.get_double("eos.c", 0.5),
                                 cfg.get_double("eos.exponent", 0.25), H_bar, eo);
    } else if (kind == "tabulated") {
        sc.eos_ = Eos::tabulated(cfg.get_pairs("eos.table"), H_bar, eo);
    } else {
        fail(ErrorKind::config, "unknown eos.kind: " + kind);
    }
    if (cfg.get_bool("thermo.enabled", false)) {
        sc.eos_ = sc.eos_.with_thermo(make_thermo(cfg.get_double("thermo.n0", 1.0),
                                                  cfg.get_double("thermo.a_n", 1.0),
                                                  cfg.get_double("thermo.theta0", 0.3),
                                                  cfg.get_double("thermo.a_t", 1.0),
                                                  cfg.get_double("thermo.b_t", 0.5)));
    }

    const std::string prof = cfg.get_string("seed.profile", "plateau-cubic");
    if (prof != "plateau-cubic")
        fail(ErrorKind::config, "unknown seed.profile: " + prof);
    sc.profile_ = SeedProfile::plateau_cubic(cfg.get_double("seed.eps0", 0.1),
                                             cfg.get_double("seed.U1", 2.0),
                                             cfg.get_double("seed.U2", 2.0),
                                             cfg.get_double("seed.center", 0.0));

    sc.build_.grid.support_n = cfg.get_int("grid.support_points", 4096);
    sc.build_.grid.crease_n = cfg.get_int("grid.crease_points", 1024);
    sc.cert_.kappa_floor = cfg.get_double("cert.kappa_floor", 0.9);
    sc.cert_.U_rad_min = cfg.get_double("cert.U_rad_min", 0.05);
    sc.workers_ = cfg.get_int("workers", 1);
    return sc;
}

const InitialData& Scenario::data() const {
    if (!data_) {
        auto d = std::make_shared<InitialData>(
            build_initial_data(profile_, eos_, build_));
        d->set_certification(compute_U_rad(*d, cert_));
        data_ = std::move(d);
    }
    return *data_;
}

const GeometricSolution& Scenario::solution() const {
    if (!sol_) sol_ = std::make_shared<GeometricSolution>(data());
    return *sol_;
}

std::shared_ptr<const MghdBoundary> Scenario::boundary() const {
    if (!boundary_) boundary_ = std::make_shared<MghdBoundary>(solution());
    return boundary_;
}

const CoordinateMap& Scenario::map() const {
    if (!map_) {
        map_ = std::make_shared<CoordinateMap>(solution());
        map_->attach_boundary(boundary());
    }
    return *map_;
}

} // namespace relshock
