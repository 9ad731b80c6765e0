#pragma once

#include <memory>
#include <string>

#include "relshock/config.hpp"
#include "relshock/coordinate_map.hpp"
#include "relshock/eos.hpp"
#include "relshock/geo_solution.hpp"
#include "relshock/mghd_boundary.hpp"
#include "relshock/oracle_solver.hpp"
#include "relshock/seed_data.hpp"

namespace relshock {

// A fully bound scenario: EOS + seed + tolerances + grids. Construction only
// parses and validates the configuration; the physics objects are built
// lazily and cached.
class Scenario {
public:
    static Scenario defaults();
    static Scenario from_config(const KeyValueConfig& cfg);
    static KeyValueConfig default_config();

    const Eos& eos() const { return eos_; }
    const SeedProfile& profile() const { return profile_; }
    const BuildOptions& build_options() const { return build_; }
    const CertOptions& cert_options() const { return cert_; }
    int workers() const { return workers_; }

    const InitialData& data() const;
    const GeometricSolution& solution() const;
    std::shared_ptr<const MghdBoundary> boundary() const;
    const CoordinateMap& map() const;

private:
    Scenario() = default;
    Eos eos_ = Eos::constant(0.5, 1.0);
    SeedProfile profile_;
    BuildOptions build_;
    CertOptions cert_;
    int workers_ = 1;
    mutable std::shared_ptr<InitialData> data_;
    mutable std::shared_ptr<GeometricSolution> sol_;
    mutable std::shared_ptr<MghdBoundary> boundary_;
    mutable std::shared_ptr<CoordinateMap> map_;
};

// Standard analytic thermo family used when `thermo.enabled` is on:
// n = n0 exp(a_n h), theta = theta0 exp(a_t h + b_t s).
ThermoCallbacks make_thermo(double n0, double a_n, double theta0, double a_t, double b_t);

} // namespace relshock
