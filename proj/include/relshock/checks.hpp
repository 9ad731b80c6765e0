#pragma once

#include <cstdint>

#include "relshock/energy_current.hpp"
#include "relshock/fluid4d.hpp"
#include "relshock/geo_solution.hpp"

namespace relshock {

struct IdentityOptions {
    int n_states = 10000;      // random 1D states
    int n_forms = 1000;        // random (state, xi, variation) triples
    Idx4 field_extents{10, 10, 10, 10};
    std::uint64_t seed = 20260809;
    double tol_algebraic = 1e-12;
    double tol_roundtrip = 1e-10;
    int workers = 1;
};

// Criterion-style identity battery over random states and fields: all
// algebraic identities of the 1D state/frame/metric, the energy-current
// bilinear extraction, and the pointwise 4D kernels.
Report check_identities(const Eos& eos, const IdentityOptions& opt = {});

// Energy-current positivity: doubling search per random pair + the reduced
// f = 0 statement, wrapped into a Report.
Report check_energy_current(const Eos& eos, const KBounds& K, int n_samples,
                            std::uint64_t seed);

// Residual convergence of the differential identities under mesh refinement.
struct KernelConvergence {
    std::vector<double> h;          // stencil spacings, coarse to fine
    std::vector<double> vort_gradient; // max |vort(S)| over probes
    std::vector<double> eikonal;
    std::vector<double> wave;
    std::vector<double> constraint;
    double order_vort = 0.0, order_eikonal = 0.0, order_wave = 0.0,
           order_constraint = 0.0;
};
KernelConvergence check_kernel_convergence(const GeometricSolution& sol,
                                           const CoordinateMap& map,
                                           int n_probes = 16, int levels = 3,
                                           double h0 = 0.04,
                                           std::uint64_t seed = 7);

// Plane-symmetric embedding consistency: the 1D module quantities recomputed
// through the 4D kernels.
Report check_embedding_consistency(const GeometricSolution& sol,
                                   const CoordinateMap& map, int n_probes = 24,
                                   std::uint64_t seed = 11);

} // namespace relshock
