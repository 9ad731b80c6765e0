#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "relshock/coordinate_map.hpp"
#include "relshock/eos.hpp"
#include "relshock/tensor4.hpp"

namespace relshock {

struct Point4 {
    double t = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
    double operator[](int a) const { return a == 0 ? t : a == 1 ? x1 : a == 2 ? x2 : x3; }
};

using Idx4 = std::array<int, 4>;

// Field callables; u0 is reconstructed as sqrt(1 + |u|^2) at sampling time.
struct FieldFns {
    std::function<double(Point4)> h;
    std::function<double(Point4)> s;
    std::function<std::array<double, 3>(Point4)> u_spatial;
};

// Uniform (t,x1,x2,x3) grid of sampled fluid fields with 4th-order central
// finite differences. Stencils that would leave the grid raise
// StencilOutOfBounds instead of degrading silently.
class FluidField4D {
public:
    FluidField4D(const FieldFns& fns, Point4 origin, std::array<double, 4> spacing,
                 Idx4 extents, Eos eos);
    // sample all four velocity components; the normalization must hold to
    // norm_tol at every node
    FluidField4D(std::function<double(Point4)> h_fn, std::function<double(Point4)> s_fn,
                 std::function<Vec4(Point4)> u_fn, Point4 origin,
                 std::array<double, 4> spacing, Idx4 extents, Eos eos,
                 double norm_tol = 1e-6);

    const Eos& eos() const { return eos_; }
    const Idx4& extents() const { return n_; }
    double spacing(int axis) const { return dx_[axis]; }
    Point4 point(const Idx4& i) const;

    double h(const Idx4& i) const { return h_[flat(i)]; }
    double s(const Idx4& i) const { return s_[flat(i)]; }
    Vec4 u(const Idx4& i) const;
    double c(const Idx4& i) const;
    double H(const Idx4& i) const;

    // 4th-order central derivative of an arbitrary lattice scalar
    using ScalarAt = std::function<double(const Idx4&)>;
    using OneFormAt = std::function<Vec4(const Idx4&)>;
    double deriv(const ScalarAt& f, Idx4 i, int axis) const;
    void require_interior(const Idx4& i, int pad) const;

private:
    std::size_t flat(const Idx4& i) const;
    Idx4 n_{};
    Point4 origin_;
    std::array<double, 4> dx_{};
    Eos eos_;
    std::vector<double> h_, s_, u0_, u1_, u2_, u3_;
};

struct Metric4AtPoint {
    Mat4 g, ginv;
    double n = 0.0;
};

Metric4AtPoint acoustical_metric(const FluidField4D& f, const Idx4& i);
Mat4 projection_Pi(const FluidField4D& f, const Idx4& i);

// u-orthogonal curl: vort^a(xi) = -eps^{abcd} u_b d_c xi_d (FD pad 2)
Vec4 vort(const FluidField4D& f, const FluidField4D::OneFormAt& xi, const Idx4& i);
Vec4 vorticity(const FluidField4D& f, const Idx4& i);        // vort of (H u)_flat
Vec4 entropy_gradient(const FluidField4D& f, const Idx4& i); // S_a = d_a s

// Modified variables; requires the EOS thermo callbacks (n, theta, theta_h).
std::pair<Vec4, double> modified_variables(const FluidField4D& f, const Idx4& i);

double null_form_h(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                   const FluidField4D::ScalarAt& psi, const Idx4& i);
double null_form_antisym(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                         const FluidField4D::ScalarAt& psi, int mu, int nu,
                         const Idx4& i);

std::pair<Vec4, Vec4> B_and_N(const FluidField4D& f, const Idx4& i);

// box_h phi via the divergence form; needs pad 4 (nested stencils)
double covariant_wave_op(const FluidField4D& f, const FluidField4D::ScalarAt& phi,
                         const Idx4& i);

// u^k d_k (m(u,u) + 1) + (m(u,u)+1) u^k d_k h with the derivative expanded
// through the velocity components
double constraint_residual(const FluidField4D& f, const Idx4& i);

// ---------------------------------------------------------------------------
// Field factories
// ---------------------------------------------------------------------------
// smooth deterministic pseudo-random field in a compact state range
FieldFns manufactured_field(std::uint64_t seed, double amplitude = 0.1,
                            bool with_entropy = true);

// plane-symmetric simple-wave solution pushed to rectangular coordinates;
// valid for t below the shock time
FieldFns embedded_simple_wave(const GeometricSolution& sol, const CoordinateMap& map);

// eikonal scalar of the embedded solution (the U coordinate as a field)
std::function<double(Point4)> embedded_eikonal(const CoordinateMap& map);

} // namespace relshock
