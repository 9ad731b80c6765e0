#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relshock/seed_data.hpp"

namespace relshock {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed_lo = 0.0, observed_hi = 0.0;
    double bound_lo = 0.0, bound_hi = 0.0;
    std::string note;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct SharpOptions {
    int nt = 129;
    int nu = 257;
};

// Closed-form solution in geometric coordinates over certified initial data:
// R+ is transported trivially, (c/n) mu = 1 + t G(U) exactly, and the
// X-derivatives of mu come from exact U-differentiation of that affine form.
class GeometricSolution {
public:
    explicit GeometricSolution(InitialData data);

    const InitialData& data() const { return *data_; }
    double T_shock() const { return data_->T_shock(); }
    double U_rad() const { return data_->certification().U_rad; }
    double U_center() const { return data_->U_center(); }

    double R_plus(double t, double U) const;
    double mu(double t, double U) const;
    // mu at t = T_shock + tau without forming the large cancellation
    double mu_at_shift(double tau, double U) const;
    double L_mu(double U) const;
    double Xbreve_mu(double t, double U) const;
    double XX_mu(double t, double U) const;
    // -(dR0/dU)/(1 + tG); AtSingularity within |1+tG| < 1e-13 max(1, t delta)
    double partial1_Rplus(double t, double U) const;

    double c_over_n(double U) const { return data_->c_over_n(U); }
    double n_over_c(double U) const { return data_->n_over_c(U); }

    Report verify_sharp_estimates(const SharpOptions& opt = {}) const;

private:
    std::shared_ptr<const InitialData> data_;
};

} // namespace relshock
