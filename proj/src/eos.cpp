#include "relshock/eos.hpp"

#include <algorithm>
#include <cmath>

#include "relshock/errors.hpp"
#include "relshock/numerics.hpp"

namespace relshock {

namespace {

// Cumulative integral of a smooth integrand on a node grid. Node values are
// built once by high-order quadrature; between nodes the map is evaluated by
// cubic Hermite interpolation with the exact integrand as slope (node
// spacings are chosen so the interpolation error sits far below the
// quadrature tolerance). Inversion brackets on the nodes and polishes with
// Newton against the same interpolant.
struct Cumulative {
    std::vector<double> xs, ys, fs;
    std::function<double(double)> f;
    double tol = 1e-12;

    void build(std::function<double(double)> fn, double lo, double hi, int n, double tol_) {
        f = std::move(fn);
        tol = tol_;
        xs.resize(n + 1);
        ys.resize(n + 1);
        fs.resize(n + 1);
        double acc = 0.0;
        xs[0] = lo;
        ys[0] = 0.0;
        fs[0] = f(lo);
        for (int i = 0; i < n; ++i) {
            const double a = lo + (hi - lo) * i / n;
            const double b = lo + (hi - lo) * (i + 1) / n;
            acc += num::integrate(f, a, b, tol, 1e-30);
            xs[i + 1] = b;
            ys[i + 1] = acc;
            fs[i + 1] = f(b);
        }
    }

    double lo() const { return xs.front(); }
    double hi() const { return xs.back(); }

    // Restrict to the maximal strictly monotone node range containing x0, so
    // that inversion stays on a diffeomorphic branch.
    void trim_monotone_around(double x0) {
        auto it = std::upper_bound(xs.begin(), xs.end(), x0);
        std::size_t i0 = std::min<std::size_t>(
            xs.size() - 2, std::max<std::ptrdiff_t>(0, it - xs.begin() - 1));
        const double sgn = (ys[i0 + 1] - ys[i0] > 0.0) ? 1.0 : -1.0;
        std::size_t a = i0, b = i0 + 1;
        while (a > 0 && sgn * (ys[a] - ys[a - 1]) > 0.0) --a;
        while (b + 1 < ys.size() && sgn * (ys[b + 1] - ys[b]) > 0.0) ++b;
        if (a > 0 || b + 1 < ys.size()) {
            xs = std::vector<double>(xs.begin() + a, xs.begin() + b + 1);
            ys = std::vector<double>(ys.begin() + a, ys.begin() + b + 1);
            fs = std::vector<double>(fs.begin() + a, fs.begin() + b + 1);
        }
    }

    double eval(double x) const {
        if (x < lo() - 1e-12 * std::max(1.0, std::abs(lo())) ||
            x > hi() + 1e-12 * std::max(1.0, std::abs(hi())))
            fail(ErrorKind::out_of_range, "cumulative map: argument outside tabulated domain");
        x = std::clamp(x, lo(), hi());
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t i = std::min<std::size_t>(
            xs.size() - 2, std::max<std::ptrdiff_t>(0, it - xs.begin() - 1));
        const double h = xs[i + 1] - xs[i];
        const double s = (x - xs[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * ys[i] + (s3 - 2 * s2 + s) * h * fs[i]
             + (-2 * s3 + 3 * s2) * ys[i + 1] + (s3 - s2) * h * fs[i + 1];
    }

    // Solve eval(x) = y for strictly monotone cumulative maps.
    double invert(double y) const {
        const bool inc = ys.back() > ys.front();
        const double ylo = std::min(ys.front(), ys.back());
        const double yhi = std::max(ys.front(), ys.back());
        const double slack = 1e-11 * std::max(1.0, std::max(std::abs(ylo), std::abs(yhi)));
        if (y < ylo - slack || y > yhi + slack)
            fail(ErrorKind::out_of_range, "cumulative map: value outside tabulated range");
        y = std::clamp(y, ylo, yhi);
        std::size_t a = 0, b = xs.size() - 1;
        while (b - a > 1) {
            const std::size_t mid = (a + b) / 2;
            const bool left = inc ? (ys[mid] > y) : (ys[mid] < y);
            if (left) b = mid; else a = mid;
        }
        double xa = xs[a], xb = xs[b];
        double x = (ys[b] != ys[a]) ? xa + (xb - xa) * (y - ys[a]) / (ys[b] - ys[a])
                                    : 0.5 * (xa + xb);
        for (int it = 0; it < 80; ++it) {
            const double g = eval(x) - y;
            if (inc ? (g > 0.0) : (g < 0.0)) xb = x; else xa = x;
            const double d = f(x);
            double xn = (d != 0.0) ? x - g / d : 0.5 * (xa + xb);
            if (!(xn >= xa && xn <= xb)) xn = 0.5 * (xa + xb);
            if (std::abs(xn - x) <= tol * std::max(1.0, std::abs(xn))) return xn;
            x = xn;
        }
        return x;
    }
};

// Cubic Hermite interpolation with centered-difference node slopes; used for
// tabulated sound-speed laws.
struct HermiteCurve {
    std::vector<double> xs, ys, ds;

    void build(std::vector<std::pair<double, double>> table) {
        std::sort(table.begin(), table.end());
        const int n = (int)table.size();
        if (n < 2) fail(ErrorKind::config, "tabulated EOS needs at least two rows");
        xs.resize(n);
        ys.resize(n);
        ds.resize(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = table[i].first;
            ys[i] = table[i].second;
            if (i > 0 && xs[i] <= xs[i - 1])
                fail(ErrorKind::config, "tabulated EOS: H column must be strictly increasing");
        }
        for (int i = 0; i < n; ++i) {
            if (i == 0)
                ds[i] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
            else if (i == n - 1)
                ds[i] = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
            else
                ds[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
        }
    }

    std::size_t segment(double x) const {
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        return std::min<std::size_t>(xs.size() - 2,
                                     std::max<std::ptrdiff_t>(0, it - xs.begin() - 1));
    }

    double value(double x) const {
        const std::size_t i = segment(x);
        const double h = xs[i + 1] - xs[i];
        const double s = (x - xs[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * ys[i] + (s3 - 2 * s2 + s) * h * ds[i]
             + (-2 * s3 + 3 * s2) * ys[i + 1] + (s3 - s2) * h * ds[i + 1];
    }

    double derivative(double x) const {
        const std::size_t i = segment(x);
        const double h = xs[i + 1] - xs[i];
        const double s = (x - xs[i]) / h;
        const double s2 = s * s;
        return ((6 * s2 - 6 * s) * ys[i] + (3 * s2 - 4 * s + 1) * h * ds[i]
              + (-6 * s2 + 6 * s) * ys[i + 1] + (3 * s2 - 2 * s) * h * ds[i + 1]) / h;
    }
};

struct SimpleState {
    double H, c, u0, u1;
};

} // namespace

struct Eos::Impl {
    std::string kind;
    bool constant_c = false;
    double H_bar = 1.0;
    EosOptions opt;
    std::function<double(double, double)> c_fn, dc_fn;
    ThermoCallbacks thermo;

    // F is tabulated in log-enthalpy, where dF/d(ln H) = 1/c stays smooth
    // down to small H
    Cumulative F_cum;
    double F_at_Hbar = 0.0;
    Cumulative A_cum;   // cumulative of the focusing integrand from z_lo
    double A_at_zero = 0.0;

    double sound_speed(double H, double s) const {
        if (!(H > 0.0) || H < opt.H_min || H > opt.H_max)
            fail(ErrorKind::eos_domain, "sound speed: enthalpy outside EOS domain");
        const double c = c_fn(H, s);
        if (!(c > 0.0) || c > 1.0)
            fail(ErrorKind::hyperbolicity, "sound speed left (0,1]");
        return c;
    }

    double F(double H) const {
        // route the domain/positivity checks through sound_speed
        (void)sound_speed(H, 0.0);
        return F_cum.eval(std::log(H)) - F_at_Hbar;
    }

    SimpleState simple_state(double z) const {
        // state along R- = 0: F(H) = z/2
        const double H = F_inv(0.5 * z);
        return {H, sound_speed(H, 0.0), std::cosh(0.5 * z), std::sinh(0.5 * z)};
    }

    double F_inv(double y) const { return std::exp(F_cum.invert(y + F_at_Hbar)); }

    double a_prime(double z) const {
        const SimpleState st = simple_state(z);
        const double cp = dc_fn(st.H, 0.0);
        const double gnl = 1.0 - st.c * st.c + st.c * st.H * cp;
        const double denom = st.u0 + st.c * st.u1;
        return -gnl / (2.0 * denom * denom);
    }

    // The table integrands must reference *this* Impl; re-point them after
    // any copy (with_thermo) so they never dangle.
    void rebind() {
        Impl* self = this;
        F_cum.f = [self](double y) { return 1.0 / self->c_fn(std::exp(y), 0.0); };
        A_cum.f = [self](double z) { return self->a_prime(z); };
    }
};

std::shared_ptr<const Eos::Impl> Eos::finish(std::unique_ptr<Eos::Impl> impl) {
    Impl* im_ptr = impl.get();
    auto& im = *impl;
    if (!(im.H_bar > 0.0) || im.H_bar < im.opt.H_min || im.H_bar > im.opt.H_max)
        fail(ErrorKind::config, "H_bar must lie inside the EOS domain");
    // reject laws that leave (0,1] anywhere on the domain up front
    const int probe = 64;
    for (int i = 0; i <= probe; ++i) {
        const double H = im.opt.H_min + (im.opt.H_max - im.opt.H_min) * i / probe;
        (void)im.sound_speed(H, 0.0);
    }
    im.F_cum.build([im_ptr](double y) { return 1.0 / im_ptr->c_fn(std::exp(y), 0.0); },
                   std::log(im.opt.H_min), std::log(im.opt.H_max), im.opt.table_n,
                   im.opt.quad_tol);
    im.F_at_Hbar = im.F_cum.eval(std::log(im.H_bar));

    const double Flo = im.F_cum.ys.front() - im.F_at_Hbar;
    const double Fhi = im.F_cum.ys.back() - im.F_at_Hbar;
    const double slack = 1e-6 * (Fhi - Flo);
    const double z_lo = std::max(2.0 * (Flo + slack), -im.opt.r_max);
    const double z_hi = std::min(2.0 * (Fhi - slack), im.opt.r_max);
    if (!(z_lo < 0.0 && z_hi > 0.0))
        fail(ErrorKind::config, "EOS domain too narrow to bracket R+ = 0");
    im.A_cum.build([im_ptr](double z) { return im_ptr->a_prime(z); }, z_lo, z_hi,
                   im.opt.table_n, im.opt.quad_tol);
    im.A_cum.trim_monotone_around(0.0);
    im.A_at_zero = im.A_cum.eval(0.0);
    im.rebind();
    return std::shared_ptr<const Eos::Impl>(impl.release());
}


Eos Eos::constant(double c_bar, double H_bar, EosOptions opt) {
    auto impl = std::make_unique<Impl>();
    impl->kind = "constant";
    impl->constant_c = true;
    impl->H_bar = H_bar;
    impl->opt = opt;
    impl->c_fn = [c_bar](double, double) { return c_bar; };
    impl->dc_fn = [](double, double) { return 0.0; };
    return Eos(finish(std::move(impl)));
}

Eos Eos::power_law(double c_ref, double exponent, double H_bar, EosOptions opt) {
    auto impl = std::make_unique<Impl>();
    impl->kind = "powerlaw";
    impl->H_bar = H_bar;
    impl->opt = opt;
    impl->c_fn = [c_ref, exponent, H_bar](double H, double) {
        return c_ref * std::pow(H / H_bar, exponent);
    };
    impl->dc_fn = [c_ref, exponent, H_bar](double H, double) {
        return c_ref * exponent * std::pow(H / H_bar, exponent - 1.0) / H_bar;
    };
    return Eos(finish(std::move(impl)));
}

Eos Eos::tabulated(std::vector<std::pair<double, double>> table, double H_bar,
                   EosOptions opt) {
    auto curve = std::make_shared<HermiteCurve>();
    curve->build(std::move(table));
    opt.H_min = std::max(opt.H_min, curve->xs.front());
    opt.H_max = std::min(opt.H_max, curve->xs.back());
    auto impl = std::make_unique<Impl>();
    impl->kind = "tabulated";
    impl->H_bar = H_bar;
    impl->opt = opt;
    impl->c_fn = [curve](double H, double) { return curve->value(H); };
    impl->dc_fn = [curve](double H, double) { return curve->derivative(H); };
    return Eos(finish(std::move(impl)));
}

Eos Eos::custom(std::function<double(double, double)> c,
                std::function<double(double, double)> dc_dH, double H_bar,
                EosOptions opt) {
    auto impl = std::make_unique<Impl>();
    impl->kind = "custom";
    impl->H_bar = H_bar;
    impl->opt = opt;
    impl->c_fn = std::move(c);
    impl->dc_fn = std::move(dc_dH);
    return Eos(finish(std::move(impl)));
}

const std::string& Eos::kind() const { return impl_->kind; }
bool Eos::is_constant() const { return impl_->constant_c; }
double Eos::H_bar() const { return impl_->H_bar; }
double Eos::H_min() const { return impl_->opt.H_min; }
double Eos::H_max() const { return impl_->opt.H_max; }
double Eos::r_max() const { return impl_->opt.r_max; }

double Eos::sound_speed(double H, double s) const { return impl_->sound_speed(H, s); }
double Eos::sound_speed_dH(double H, double s) const { return impl_->dc_fn(H, s); }

bool Eos::has_thermo() const { return impl_->thermo.complete(); }
const ThermoCallbacks& Eos::thermo() const {
    if (!has_thermo())
        fail(ErrorKind::missing_thermo_callback, "EOS has no thermodynamic callbacks");
    return impl_->thermo;
}
Eos Eos::with_thermo(ThermoCallbacks t) const {
    auto copy = std::make_unique<Impl>(*impl_);
    copy->thermo = std::move(t);
    copy->rebind();
    return Eos(std::shared_ptr<const Impl>(copy.release()));
}
double Eos::q(double h, double s) const {
    const auto& t = thermo();
    return t.theta(h, s) / (impl_->H_bar * std::exp(h));
}

double Eos::F(double H) const { return impl_->F(H); }
double Eos::F_inv(double y) const { return impl_->F_inv(y); }
double Eos::F_min() const { return impl_->F_cum.ys.front() - impl_->F_at_Hbar; }
double Eos::F_max() const { return impl_->F_cum.ys.back() - impl_->F_at_Hbar; }

double Eos::almost_riemann_F(double H, double s) const {
    (void)impl_->sound_speed(H, s);
    const Impl& im = *impl_;
    return num::integrate([&im, s](double x) { return 1.0 / (x * im.c_fn(x, s)); },
                          im.H_bar, H, im.opt.quad_tol, 1e-30);
}

double Eos::nondegeneracy_factor() const {
    const double c = impl_->sound_speed(impl_->H_bar, 0.0);
    const double cp = impl_->dc_fn(impl_->H_bar, 0.0);
    return 1.0 - c * c + c * impl_->H_bar * cp;
}

double Eos::antiderivative_A(double r_plus) const {
    return impl_->A_cum.eval(r_plus) - impl_->A_at_zero;
}
double Eos::antiderivative_A_prime(double r_plus) const { return impl_->a_prime(r_plus); }
double Eos::A_inv(double y) const { return impl_->A_cum.invert(y + impl_->A_at_zero); }
double Eos::A_domain_lo() const { return impl_->A_cum.lo(); }
double Eos::A_domain_hi() const { return impl_->A_cum.hi(); }

} // namespace relshock
