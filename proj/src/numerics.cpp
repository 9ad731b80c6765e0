#include "relshock/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

#include "relshock/errors.hpp"

namespace relshock::num {

namespace {

// One RK4 pass for the quadrature y' = f(x) with n steps.
double rk4_quad(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double y = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = a + i * h;
        const double k1 = f(x);
        const double k23 = f(x + 0.5 * h); // k2 == k3 when f has no y-dependence
        const double k4 = f(x + h);
        y += (h / 6.0) * (k1 + 4.0 * k23 + k4);
    }
    return y;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor) {
    if (a == b) return 0.0;
    int n = 8;
    double prev = rk4_quad(f, a, b, n);
    for (int it = 0; it < 24; ++it) {
        n *= 2;
        const double cur = rk4_quad(f, a, b, n);
        const double err = std::abs(cur - prev) / 15.0; // Richardson, order 4
        if (err <= rel_tol * std::max(std::abs(cur), abs_floor)) {
            return cur + (cur - prev) / 15.0;
        }
        prev = cur;
    }
    fail(ErrorKind::integration_failure, "quadrature failed to converge");
}

double ode_rk4(const std::function<double(double, double)>& f, double a,
               double ya, double b, int steps) {
    const double h = (b - a) / steps;
    double x = a, y = ya;
    for (int i = 0; i < steps; ++i) {
        const double k1 = f(x, y);
        const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = f(x + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        x = a + (i + 1) * h;
    }
    return y;
}

namespace {

OdeTable rk4_dense_pass(const std::function<double(double, double)>& f,
                        double a, double ya, double b, int n) {
    OdeTable t;
    t.x.resize(n + 1);
    t.y.resize(n + 1);
    t.dy.resize(n + 1);
    const double h = (b - a) / n;
    double y = ya;
    t.x[0] = a;
    t.y[0] = ya;
    t.dy[0] = f(a, ya);
    for (int i = 0; i < n; ++i) {
        const double x = a + i * h;
        const double k1 = f(x, y);
        const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
        const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
        const double k4 = f(x + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t.x[i + 1] = a + (i + 1) * h;
        t.y[i + 1] = y;
        t.dy[i + 1] = f(t.x[i + 1], y);
    }
    return t;
}

} // namespace

OdeTable ode_rk4_dense(const std::function<double(double, double)>& f,
                       double a, double ya, double b, double h0, double tol,
                       int max_halvings) {
    int n = std::max(2, (int)std::ceil(std::abs(b - a) / std::max(h0, 1e-300)));
    OdeTable coarse = rk4_dense_pass(f, a, ya, b, n);
    for (int it = 0; it < max_halvings; ++it) {
        OdeTable fine = rk4_dense_pass(f, a, ya, b, 2 * n);
        double diff = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < coarse.x.size(); ++i) {
            diff = std::max(diff, std::abs(fine.y[2 * i] - coarse.y[i]));
            scale = std::max(scale, std::abs(fine.y[2 * i]));
        }
        if (diff <= tol * scale) return fine;
        coarse = std::move(fine);
        n *= 2;
    }
    fail(ErrorKind::integration_failure, "dense ODE solve stalled before reaching tolerance");
}

double OdeTable::value(double xq) const {
    if (x.size() < 2) fail(ErrorKind::integration_failure, "empty ODE table");
    const bool inc = x.back() > x.front();
    double lo = inc ? x.front() : x.back();
    double hi = inc ? x.back() : x.front();
    xq = std::clamp(xq, lo, hi);
    auto it = inc ? std::upper_bound(x.begin(), x.end(), xq)
                  : std::upper_bound(x.begin(), x.end(), xq, std::greater<>());
    std::size_t i = std::min<std::size_t>(x.size() - 2, std::max<std::ptrdiff_t>(0, it - x.begin() - 1));
    const double h = x[i + 1] - x[i];
    const double s = (xq - x[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * dy[i]
         + (-2 * s3 + 3 * s2) * y[i + 1] + (s3 - s2) * h * dy[i + 1];
}

double OdeTable::derivative(double xq) const {
    if (x.size() < 2) fail(ErrorKind::integration_failure, "empty ODE table");
    const bool inc = x.back() > x.front();
    double lo = inc ? x.front() : x.back();
    double hi = inc ? x.back() : x.front();
    xq = std::clamp(xq, lo, hi);
    auto it = inc ? std::upper_bound(x.begin(), x.end(), xq)
                  : std::upper_bound(x.begin(), x.end(), xq, std::greater<>());
    std::size_t i = std::min<std::size_t>(x.size() - 2, std::max<std::ptrdiff_t>(0, it - x.begin() - 1));
    const double h = x[i + 1] - x[i];
    const double s = (xq - x[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y[i] + (3 * s2 - 4 * s + 1) * h * dy[i]
          + (-6 * s2 + 6 * s) * y[i + 1] + (3 * s2 - 2 * s) * h * dy[i + 1]) / h;
}

double find_root(const std::function<double(double)>& f,
                 const std::function<double(double)>& df, double lo, double hi,
                 double rel_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        fail(ErrorKind::out_of_range, "root finder: endpoints do not bracket a sign change");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) { hi = x; fhi = fx; } else { lo = x; flo = fx; }
        // Newton step from the current iterate; fall back to bisection when
        // it leaves the bracket.
        const double d = df(x);
        double xn = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        const double scale = std::max(1.0, std::abs(xn));
        if (std::abs(xn - x) <= rel_tol * scale && std::abs(fx) <= 1e3 * rel_tol * std::max(std::abs(flo), std::abs(fhi)))
            return xn;
        if (hi - lo <= rel_tol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
        x = xn;
    }
    return x;
}

double find_root_bisect(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        fail(ErrorKind::out_of_range, "bisection: endpoints do not bracket a sign change");
    for (int it = 0; it < 200 && hi - lo > rel_tol * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) { hi = mid; fhi = fm; } else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

double central_diff(const std::function<double(double)>& f, double x, double h,
                    int order) {
    switch (order) {
        case 2:
            return (f(x + h) - f(x - h)) / (2 * h);
        case 4:
            return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
        default:
            return (f(x + 3 * h) - 9 * f(x + 2 * h) + 45 * f(x + h) - 45 * f(x - h)
                    + 9 * f(x - 2 * h) - f(x - 3 * h)) / (60 * h);
    }
}

double central_diff2(const std::function<double(double)>& f, double x, double h) {
    // 6th-order second derivative
    return (2 * f(x + 3 * h) - 27 * f(x + 2 * h) + 270 * f(x + h) - 490 * f(x)
            + 270 * f(x - h) - 27 * f(x - 2 * h) + 2 * f(x - 3 * h)) / (180 * h * h);
}

std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int deg) {
    const int n = (int)x.size();
    Eigen::MatrixXd A(n, deg + 1);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int k = 0; k <= deg; ++k) {
            A(i, k) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    return std::vector<double>(c.data(), c.data() + deg + 1);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            fail(ErrorKind::out_of_range, "loglog_slope: nonpositive sample");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return polyfit(lx, ly, 1)[1];
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
    if (workers <= 1 || n < 2) {
        chunk_fn(0, n);
        return;
    }
    const std::size_t w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t lo = k * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] { chunk_fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace relshock::num

namespace relshock {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::config: return "ConfigError";
        case ErrorKind::eos_domain: return "EosDomainError";
        case ErrorKind::hyperbolicity: return "HyperbolicityError";
        case ErrorKind::out_of_range: return "OutOfRange";
        case ErrorKind::invalid_state: return "InvalidState";
        case ErrorKind::degenerate_frame: return "DegenerateFrame";
        case ErrorKind::non_degeneracy_failure: return "NonDegeneracyFailure";
        case ErrorKind::search_exhausted: return "SearchExhausted";
        case ErrorKind::at_singularity: return "AtSingularity";
        case ErrorKind::out_of_certified_region: return "OutOfCertifiedRegion";
        case ErrorKind::positive_g: return "PositiveG";
        case ErrorKind::multiple_crease_points: return "MultipleCreasePoints";
        case ErrorKind::integration_failure: return "IntegrationFailure";
        case ErrorKind::crease_degeneracy: return "CreaseDegeneracy";
        case ErrorKind::not_in_image: return "NotInImage";
        case ErrorKind::cfl_violation: return "CflViolation";
        case ErrorKind::resolution_exhausted: return "ResolutionExhausted";
        case ErrorKind::non_monotone_ladder: return "NonMonotoneLadder";
        case ErrorKind::not_timelike: return "NotTimelike";
        case ErrorKind::stencil_out_of_bounds: return "StencilOutOfBounds";
        case ErrorKind::missing_thermo_callback: return "MissingThermoCallback";
        case ErrorKind::io: return "IoError";
    }
    return "Error";
}

} // namespace relshock
