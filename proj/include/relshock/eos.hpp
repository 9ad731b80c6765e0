#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace relshock {

// Optional thermodynamic callbacks. Only n, theta, and d(theta)/dh at fixed s
// are consumed (by the energy current q-terms and the modified-variable
// kernels); the full state surface is out of scope.
struct ThermoCallbacks {
    std::function<double(double h, double s)> n;
    std::function<double(double h, double s)> theta;
    std::function<double(double h, double s)> theta_h; // d(theta)/dh at fixed s
    bool complete() const { return n && theta && theta_h; }
};

struct EosOptions {
    double H_min = 0.05;
    double H_max = 20.0;
    double r_max = 1.5;   // |R+| range tabulated for the antiderivative
    int table_n = 2048;   // nodes per cumulative table
    double quad_tol = 1e-12;
};

// Barotropic sound-speed law c(H,s) plus the derived scalar machinery:
// F (and its per-s variant), the antiderivative of the focusing nonlinearity,
// their inverses, and the non-degeneracy diagnostic. Immutable after
// construction; cheap to copy (shared internals); safe for concurrent reads.
class Eos {
public:
    static Eos constant(double c_bar, double H_bar, EosOptions opt = {});
    // c(H) = c_ref * (H/H_bar)^exponent
    static Eos power_law(double c_ref, double exponent, double H_bar, EosOptions opt = {});
    // cubic-Hermite interpolated user table of (H, c) rows, strictly increasing H
    static Eos tabulated(std::vector<std::pair<double, double>> table, double H_bar,
                         EosOptions opt = {});
    static Eos custom(std::function<double(double H, double s)> c,
                      std::function<double(double H, double s)> dc_dH, double H_bar,
                      EosOptions opt = {});

    const std::string& kind() const;
    bool is_constant() const;
    double H_bar() const;
    double H_min() const;
    double H_max() const;
    double r_max() const;

    // Sound speed; errors unless H in domain and the resulting c in (0,1].
    double sound_speed(double H, double s = 0.0) const;
    double sound_speed_dH(double H, double s = 0.0) const;

    // q = theta/H evaluated at (h, s); requires thermo callbacks.
    double q(double h, double s) const;
    bool has_thermo() const;
    const ThermoCallbacks& thermo() const;
    Eos with_thermo(ThermoCallbacks t) const;

    // dF/dH = 1/(Hc), F(H_bar) = 0.
    double F(double H) const;
    double F_inv(double y) const;
    double F_min() const; // value of F at H_min
    double F_max() const;
    // per-s variant of F, integrated on demand at fixed s
    double almost_riemann_F(double H, double s) const;

    // 1 - c^2 + c H c' at (H_bar, 0); must be nonzero for shock scenarios.
    double nondegeneracy_factor() const;

    // Antiderivative of the focusing nonlinearity along simple states
    // (R- = 0): A[r] = int_0^r -(1 - c^2 + c H c') / (2 (u0 + c u1)^2) dz,
    // A[0] = 0. a_prime is the closed-form integrand.
    double antiderivative_A(double r_plus) const;
    double antiderivative_A_prime(double r_plus) const;
    double A_inv(double y) const;
    double A_domain_lo() const;
    double A_domain_hi() const;

private:
    struct Impl;
    explicit Eos(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static std::shared_ptr<const Impl> finish(std::unique_ptr<Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

} // namespace relshock
