#include "relshock/seed_data.hpp"

#include <algorithm>
#include <cmath>

#include "relshock/errors.hpp"
#include "relshock/numerics.hpp"

namespace relshock {

namespace {

// C^4 smoothstep on [0,1]: s(x) = 126x^5 - 420x^6 + 540x^7 - 315x^8 + 70x^9,
// s' = 630 (x(1-x))^4; derivatives through order 4 vanish at both ends.
double smoothstep4(double x, int k) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return k == 0 ? 1.0 : 0.0;
    const double u = x * (1.0 - x);
    const double up = 1.0 - 2.0 * x;
    switch (k) {
        case 0:
            return x * x * x * x * x *
                   (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + x * 70.0))));
        case 1: return 630.0 * u * u * u * u;
        case 2: return 2520.0 * u * u * u * up;
        case 3: return 2520.0 * u * u * (3.0 * up * up - 2.0 * u);
        case 4: return 15120.0 * u * up * (up * up - 3.0 * u);
        default: fail(ErrorKind::out_of_range, "smoothstep4: derivative order > 4");
    }
}

// plateau window: 1 on [-1,1] (relative to center), smoothstep down to 0 at
// the support edges, C^4 everywhere
double window(double x, double U1, double U2, int k) {
    if (x >= -1.0 && x <= 1.0) return k == 0 ? 1.0 : 0.0;
    if (x > 1.0) {
        const double d = std::max(U2 - 1.0, 1e-12);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        return sgn * smoothstep4((U2 - x) / d, k) / std::pow(d, k);
    }
    const double d = std::max(U1 - 1.0, 1e-12);
    return smoothstep4((U1 + x) / d, k) / std::pow(d, k);
}

double binom(int n, int j) {
    static const double c[5][5] = {{1, 0, 0, 0, 0},
                                   {1, 1, 0, 0, 0},
                                   {1, 2, 1, 0, 0},
                                   {1, 3, 3, 1, 0},
                                   {1, 4, 6, 4, 1}};
    return c[n][j];
}

} // namespace

SeedProfile SeedProfile::plateau_cubic(double eps, double U1, double U2, double center) {
    // support half-widths below 1 produce a profile that the validator
    // rejects with ViolatedSupport; the factory stays lenient so the
    // violation is reported through the standard path
    SeedProfile p;
    p.kind = "plateau-cubic";
    p.U1 = U1;
    p.U2 = U2;
    p.eps = eps;
    p.center = center;
    p.deriv = [eps, U1, U2, center](double U, int k) -> double {
        const double x = U - center;
        if (x < -U1 || x > U2) return 0.0;
        // cubic part and its derivatives
        const double poly[5] = {-x + x * x * x / 6.0, -1.0 + 0.5 * x * x, x, 1.0, 0.0};
        double acc = 0.0;
        for (int j = 0; j <= k; ++j)
            acc += binom(k, j) * window(x, U1, U2, j) * poly[k - j];
        return eps * acc;
    };
    return p;
}

SeedProfile SeedProfile::with_amplitude(double new_eps) const {
    SeedProfile p = *this;
    const double scale = new_eps / eps;
    auto base = deriv;
    p.eps = new_eps;
    p.deriv = [base, scale](double U, int k) { return scale * base(U, k); };
    return p;
}

SeedProfile SeedProfile::perturbed(std::function<double(double, int)> bump) const {
    SeedProfile p = *this;
    auto base = deriv;
    p.kind = kind + "+perturbation";
    p.deriv = [base, bump](double U, int k) { return base(U, k) + bump(U, k); };
    return p;
}

const char* to_string(SeedViolation v) {
    switch (v) {
        case SeedViolation::none: return "none";
        case SeedViolation::support: return "ViolatedSupport";
        case SeedViolation::minimum: return "ViolatedMinimum";
        case SeedViolation::third_derivative: return "ViolatedThirdDerivative";
        case SeedViolation::tail: return "ViolatedTail";
    }
    return "unknown";
}

namespace {

std::vector<double> certification_grid(const SeedProfile& p, const GridSpec& g) {
    std::vector<double> us;
    us.reserve(g.support_n + g.crease_n + 3);
    for (int i = 0; i <= g.support_n; ++i)
        us.push_back(p.support_lo() + (p.support_hi() - p.support_lo()) * i / g.support_n);
    for (int i = 0; i <= g.crease_n; ++i)
        us.push_back(p.center - 0.1 + 0.2 * i / g.crease_n);
    std::sort(us.begin(), us.end());
    return us;
}

SeedValidation violation(SeedViolation kind, double U, double margin, std::string msg) {
    SeedValidation v;
    v.ok = false;
    v.violation = kind;
    v.witness_U = U;
    v.margin = margin;
    v.message = std::move(msg);
    return v;
}

} // namespace

SeedValidation validate_seed(const SeedProfile& profile, const GridSpec& grid) {
    if (!(profile.U1 > 1.0 && profile.U2 > 1.0))
        return violation(SeedViolation::support, profile.center, 0.0,
                         "support half-widths must exceed 1");
    // compact support: the profile and its low derivatives vanish at and
    // beyond the support edges
    for (double off : {0.0, 0.1, 1.0})
        for (double edge : {profile.support_lo() - off, profile.support_hi() + off})
            for (int k = 0; k <= 1; ++k)
                if (profile.d(edge, k) != 0.0)
                    return violation(SeedViolation::support, edge, profile.d(edge, k),
                                     "profile does not vanish outside its support");

    const double c0 = profile.center;
    const double delta_star = -profile.d(c0, 1);
    if (!(delta_star > 0.0))
        return violation(SeedViolation::minimum, c0, delta_star,
                         "phi' must be negative at the crease");
    const double dd0 = profile.d(c0, 2);
    if (std::abs(dd0) > 1e-10 * std::max(1.0, delta_star))
        return violation(SeedViolation::minimum, c0, dd0,
                         "phi'' must vanish at the profile minimum");
    const double b = profile.d(c0, 3);
    if (!(b > 0.0))
        return violation(SeedViolation::minimum, c0, b,
                         "phi''' must be positive at the profile minimum");

    const auto us = certification_grid(profile, grid);
    double p_coeff = 0.0;
    for (double U : us) {
        const double x = U - c0;
        if (std::abs(x) < 1e-9) continue; // below grid resolution: same point
        const double rise = profile.d(U, 1) - profile.d(c0, 1);
        if (!(rise > 0.0))
            return violation(SeedViolation::minimum, U, rise,
                             "phi' minimum is not unique");
        if (std::abs(x) <= 1.0) {
            const double d3 = profile.d(U, 3);
            if (d3 < 0.5 * b || d3 > 2.0 * b)
                return violation(SeedViolation::third_derivative, U, d3 - b,
                                 "phi''' leaves [b/2, 2b] on the unit window");
        } else {
            p_coeff = std::max(p_coeff, -profile.d(U, 1) / delta_star);
        }
    }
    if (p_coeff >= 1.0)
        return violation(SeedViolation::tail, c0, p_coeff,
                         "phi' dips below -p*delta with p >= 1 outside the unit window");

    SeedValidation v;
    v.ok = true;
    v.delta_star = delta_star;
    v.b_coeff = b;
    v.p_coeff = p_coeff;
    return v;
}

// ---------------------------------------------------------------- data ----

InitialData::InitialData(SeedProfile profile, Eos eos, BuildOptions opt)
    : profile_(std::move(profile)), eos_(std::move(eos)), opt_(opt) {
    validation_ = validate_seed(profile_, opt_.grid);
    if (!validation_.ok)
        fail(ErrorKind::config, std::string("seed validation failed: ") +
                                    to_string(validation_.violation) + ": " +
                                    validation_.message);
    delta_star_ = validation_.delta_star;
    b_coeff_ = validation_.b_coeff;
    p_coeff_ = validation_.p_coeff;
    T_shock_ = 1.0 / delta_star_;
}

double InitialData::R0(double U) const {
    const double p = phi(U);
    if (p == 0.0 && (U < support_lo() || U > support_hi())) return 0.0;
    return eos_.A_inv(p);
}

double InitialData::dR0(double U) const {
    const double r = R0(U);
    return G(U) / eos_.antiderivative_A_prime(r);
}

FluidState1D InitialData::state(double U) const {
    return fluid_from_invariants(R0(U), 0.0, eos_);
}

double InitialData::c_over_n(double U) const {
    const auto st = state(U);
    return st.c / st.n_factor;
}

double InitialData::n_over_c(double U) const {
    const auto st = state(U);
    return st.n_factor / st.c;
}

double InitialData::d_n_over_c(double U) const {
    const auto st = state(U);
    return invariant_derivatives(st, eos_).d_n_over_c * dR0(U);
}

double InitialData::d2_n_over_c(double U) const {
    return num::central_diff([this](double u) { return d_n_over_c(u); }, U, 1e-5, 6);
}

double InitialData::L1(double U) const { return null_frame(state(U)).L1; }

double InitialData::dL1(double U) const {
    const auto st = state(U);
    return invariant_derivatives(st, eos_).dL1 * dR0(U);
}

const Certification& InitialData::certification() const {
    if (!certified_)
        fail(ErrorKind::out_of_certified_region, "initial data has no certification yet");
    return cert_;
}

void InitialData::set_certification(Certification cert) {
    cert_ = cert;
    certified_ = true;
}

InitialData build_initial_data(const SeedProfile& profile, const Eos& eos,
                               const BuildOptions& opt) {
    if (eos.nondegeneracy_factor() == 0.0)
        fail(ErrorKind::non_degeneracy_failure,
             "equation of state is linearly degenerate at the background state");
    SeedProfile p = profile;
    for (int attempt = 0; attempt <= opt.max_halvings; ++attempt) {
        const SeedValidation v = validate_seed(p, opt.grid);
        if (!v.ok)
            fail(ErrorKind::config, std::string("seed validation failed: ") +
                                        to_string(v.violation) + ": " + v.message);
        bool ok = true;
        const auto us = certification_grid(p, opt.grid);
        const double a_prime_0 = eos.antiderivative_A_prime(0.0);
        for (double U : us) {
            double r = 0.0;
            try {
                r = eos.A_inv(p(U));
            } catch (const Error&) {
                ok = false; // seed amplitude exceeds the tabulated A range
                break;
            }
            if (std::abs(r) > opt.r_safety * eos.r_max()) { ok = false; break; }
            FluidState1D st;
            try {
                st = fluid_from_invariants(r, 0.0, eos);
            } catch (const Error&) {
                ok = false;
                break;
            }
            if (st.c < opt.c_margin_lo || st.c > 1.0 - opt.c_margin_hi) { ok = false; break; }
            if (std::abs(eos.antiderivative_A_prime(r)) < opt.nd_margin * std::abs(a_prime_0)) {
                ok = false;
                break;
            }
        }
        if (ok) return InitialData(p, eos, opt);
        p = p.with_amplitude(0.5 * p.eps);
    }
    fail(ErrorKind::non_degeneracy_failure,
         "no amplitude in the search range keeps the data inside the hyperbolic "
         "interior with non-degenerate focusing");
}

// ---------------------------------------------------------- certification ----

namespace {

struct GeoEval {
    // closed forms over the initial data; duplicated from the solution view
    // so that certification depends only on this module
    const InitialData& d;
    double mu(double t, double U) const {
        return d.n_over_c(U) * (1.0 + t * d.G(U));
    }
    double Xmu(double t, double U) const {
        return t * d.n_over_c(U) * d.dG(U) + d.d_n_over_c(U) * (1.0 + t * d.G(U));
    }
    double XXmu(double t, double U) const {
        return t * (d.n_over_c(U) * d.d2G(U) + 2.0 * d.d_n_over_c(U) * d.dG(U))
             + d.d2_n_over_c(U) * (1.0 + t * d.G(U));
    }
};

struct CertCheck {
    bool ok = true;
    Certification cert;
};

CertCheck try_certify(const InitialData& data, double U_rad, const CertOptions& opt,
                      double c_frak, double C_frak) {
    CertCheck out;
    Certification& c = out.cert;
    c.U_rad = U_rad;
    c.U_center = data.U_center();
    c.c_frak = c_frak;
    c.C_frak = C_frak;
    const double c0 = data.U_center();
    const double delta = data.delta_star();
    const double T = data.T_shock();
    const double b = data.b_coeff();
    const GeoEval geo{data};

    const int n = opt.grid_n;
    double gpd_lo = 1e300, gpd_hi = -1e300;
    double dg_lo = 1e300, dg_hi = -1e300;
    double ratio_lo = 1e300, ratio_hi = -1e300;
    double xx_lo = 1e300, xx_hi = -1e300;
    double zero_max = 0.0, outer_min = 1e300, taylor_sup = 0.0;
    double prev_xmu = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= n; ++i) {
        const double x = -U_rad + 2.0 * U_rad * i / n;
        const double U = c0 + x;
        const double g = data.G(U);
        if (!(g < 0.0)) { out.ok = false; return out; }
        const double ratio = -g / delta;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        const double dg = data.dG(U);
        if (x != 0.0) {
            if (!(dg * x > 0.0)) { out.ok = false; return out; }
            const double gpd = data.G_plus_delta(U) / (x * x);
            gpd_lo = std::min(gpd_lo, gpd);
            gpd_hi = std::max(gpd_hi, gpd);
            const double dgx = dg / x;
            dg_lo = std::min(dg_lo, dgx);
            dg_hi = std::max(dg_hi, dgx);
            if (std::abs(x) >= 0.01)
                taylor_sup = std::max(taylor_sup,
                                      std::abs((data.G_plus_delta(U) - 0.5 * b * x * x)
                                               / (x * x * x)));
        }
        // Xmu zeros and outer floor on the blowup-time slice
        const double xmu = geo.Xmu(T, U);
        if (have_prev && prev_xmu * xmu <= 0.0)
            zero_max = std::max(zero_max, std::abs(x));
        prev_xmu = xmu;
        have_prev = true;
        if (std::abs(x) >= 0.5 * U_rad) outer_min = std::min(outer_min, std::abs(xmu));
        const double xxmu = geo.XXmu(T, U);
        xx_lo = std::min(xx_lo, xxmu);
        xx_hi = std::max(xx_hi, xxmu);
    }
    if (!(gpd_lo > 0.0 && dg_lo > 0.0)) { out.ok = false; return out; }
    if (ratio_lo < opt.kappa_floor) { out.ok = false; return out; }
    if (std::abs(data.dG(c0)) > 1e-8 * std::max(1.0, b)) { out.ok = false; return out; }
    if (zero_max > 0.25 * U_rad) { out.ok = false; return out; }
    if (outer_min < b * U_rad / 8.0) { out.ok = false; return out; }
    if (xx_lo < 0.5 * T * b / C_frak || xx_hi > 2.0 * T * b / c_frak) {
        out.ok = false;
        return out;
    }
    c.G_plus_delta_over_x2 = {gpd_lo, gpd_hi};
    c.dG_over_x = {dg_lo, dg_hi};
    c.minus_G_over_delta = {ratio_lo, ratio_hi};
    c.XXmu_at_Tshock = {xx_lo, xx_hi};
    c.Xmu_zero_max_abs_x = zero_max;
    c.Xmu_outer_band_min = outer_min;
    c.taylor_remainder_sup = taylor_sup;
    return out;
}

} // namespace

Certification compute_U_rad(const InitialData& data, const CertOptions& opt) {
    // global bounds of c/n over the data (the exterior state included)
    double c_frak = 1e300, C_frak = -1e300;
    const int m = 2048;
    for (int i = 0; i <= m; ++i) {
        const double U = data.support_lo() - 0.5
                       + (data.support_hi() - data.support_lo() + 1.0) * i / m;
        const double v = data.c_over_n(U);
        c_frak = std::min(c_frak, v);
        C_frak = std::max(C_frak, v);
    }

    const double cap = std::min(opt.U_rad_max,
                                std::min(data.profile().U1, data.profile().U2) - 1e-9);
    double lo = opt.U_rad_min, hi = cap;
    CertCheck top = try_certify(data, hi, opt, c_frak, C_frak);
    if (!top.ok) {
        CertCheck bot = try_certify(data, lo, opt, c_frak, C_frak);
        if (!bot.ok)
            fail(ErrorKind::search_exhausted,
                 "no U_rad >= U_rad_min satisfies the interesting-region conditions");
        for (int it = 0; it < opt.bisect_iters; ++it) {
            const double mid = 0.5 * (lo + hi);
            CertCheck c = try_certify(data, mid, opt, c_frak, C_frak);
            if (c.ok) { lo = mid; bot = c; } else { hi = mid; }
        }
        top = bot;
    }

    // exterior positivity of mu up to the blowup time
    Certification cert = top.cert;
    const double c0 = data.U_center();
    double ext_min = 1e300;
    for (int i = 0; i <= m; ++i) {
        const double U = data.support_lo() - 0.5
                       + (data.support_hi() - data.support_lo() + 1.0) * i / m;
        if (std::abs(U - c0) < cert.U_rad) continue;
        const double floor = std::min(1.0, data.G_plus_delta(U) / data.delta_star());
        ext_min = std::min(ext_min, data.n_over_c(U) * floor);
    }
    if (!(ext_min > 0.0))
        fail(ErrorKind::search_exhausted,
             "mu fails to stay positive away from the interesting region");
    cert.exterior_mu_min = ext_min;
    return cert;
}

} // namespace relshock
