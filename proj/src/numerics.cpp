#include "igeo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace igeo {

void ToleranceSpec::validate() const {
    if (abs_tol < 0.0 || rel_tol < 0.0)
        throw std::invalid_argument("ToleranceSpec: tolerances must be >= 0");
    if (abs_tol == 0.0 && rel_tol == 0.0)
        throw std::invalid_argument("ToleranceSpec: at least one of abs_tol, rel_tol must be > 0");
    if (max_steps < 1) throw std::invalid_argument("ToleranceSpec: max_steps must be >= 1");
}

namespace numerics {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order weights for the embedded error estimate.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct Stepper {
    const Rhs& rhs;
    const ToleranceSpec& tol;
    Eigen::VectorXd k1, k2, k3, k4, k5, k6, k7, ytmp, y5, y4;
    long accepted = 0, rejected = 0, attempts = 0;

    Stepper(const Rhs& r, const ToleranceSpec& t, Eigen::Index n) : rhs(r), tol(t) {
        for (auto* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &ytmp, &y5, &y4}) v->resize(n);
    }

    // One accepted adaptive step from (t, y); h is capped by hmax. Returns the
    // step actually taken and updates y in place.
    double step(double& t, Eigen::VectorXd& y, double& h, double hmax) {
        while (true) {
            if (++attempts > tol.max_steps) throw MaxStepsError("ode_solve: max_steps exceeded");
            h = std::min(h, hmax);
            if (!(h > std::abs(t) * 1e-14 + 1e-300))
                throw StepUnderflowError("ode_solve: step size underflow (stiffness or singularity)");

            rhs(t, y, k1);
            ytmp = y + h * (a21 * k1);
            rhs(t + c2 * h, ytmp, k2);
            ytmp = y + h * (a31 * k1 + a32 * k2);
            rhs(t + c3 * h, ytmp, k3);
            ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs(t + c4 * h, ytmp, k4);
            ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs(t + c5 * h, ytmp, k5);
            ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs(t + h, ytmp, k6);
            y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs(t + h, y5, k7);
            y4 = y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc =
                    tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double d = (y5[i] - y4[i]) / (sc > 0 ? sc : 1.0);
                err += d * d;
            }
            err = std::sqrt(err / static_cast<double>(y.size()));
            if (!std::isfinite(err)) err = 2.0;  // force rejection and shrink

            if (err <= 1.0) {
                const double taken = h;
                t += h;
                y = y5;
                ++accepted;
                const double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
                return taken;
            }
            ++rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
};

void check_span(double t0, double t1) {
    if (!(t1 > t0)) throw std::invalid_argument("ode_solve: tau span must be non-degenerate");
}

}  // namespace

OdeSolution ode_solve(const Rhs& rhs, const Eigen::VectorXd& y0, double tau0, double tau1,
                      const ToleranceSpec& tol) {
    tol.validate();
    check_span(tau0, tau1);
    Stepper st(rhs, tol, y0.size());
    OdeSolution out;
    double t = tau0;
    Eigen::VectorXd y = y0;
    out.tau.push_back(t);
    out.states.push_back(y);
    double h = (tau1 - tau0) / 100.0;
    while (t < tau1) {
        // A sub-ulp remainder after clamping is rounding noise, not a step.
        if (tau1 - t <= 4e-16 * (std::abs(tau1) + 1.0)) {
            t = tau1;
            break;
        }
        st.step(t, y, h, tau1 - t);
        out.tau.push_back(t);
        out.states.push_back(y);
    }
    out.tau.back() = tau1;
    out.accepted_steps = st.accepted;
    out.rejected_steps = st.rejected;
    return out;
}

OdeSolution ode_solve_grid(const Rhs& rhs, const Eigen::VectorXd& y0, std::span<const double> grid,
                           const ToleranceSpec& tol) {
    tol.validate();
    if (grid.size() < 2) throw std::invalid_argument("ode_solve_grid: need at least two grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("ode_solve_grid: grid must be strictly increasing");

    Stepper st(rhs, tol, y0.size());
    OdeSolution out;
    double t = grid[0];
    Eigen::VectorXd y = y0;
    out.tau.push_back(t);
    out.states.push_back(y);
    double h = (grid.back() - grid.front()) / 100.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double target = grid[i];
        while (t < target) {
            if (target - t <= 4e-16 * (std::abs(target) + 1.0)) break;
            st.step(t, y, h, target - t);
        }
        t = target;
        out.tau.push_back(target);
        out.states.push_back(y);
    }
    out.accepted_steps = st.accepted;
    out.rejected_steps = st.rejected;
    return out;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kron_x[8] = {0.000000000000000, 0.207784955007898, 0.405845151377397,
                              0.586087235467691, 0.741531185599394, 0.864864423359769,
                              0.949107912342759, 0.991455371120813};
constexpr double kron_w[8] = {0.209482141084728, 0.204432940075298, 0.190350578064785,
                              0.169004726639267, 0.140653259715525, 0.104790010322250,
                              0.063092092629979, 0.022935322010529};
constexpr double gauss_w[4] = {0.417959183673469, 0.381830050505119, 0.279705391489277,
                               0.129484966168870};

struct Panel {
    double a, b;
};

double g7k15(const ScalarFn& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    if (!std::isfinite(f0)) throw NonFiniteError("quadrature: non-finite integrand sample");
    double k15 = kron_w[0] * f0;
    double g7 = gauss_w[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kron_x[i];
        const double fp = f(mid + dx);
        const double fm = f(mid - dx);
        if (!std::isfinite(fp) || !std::isfinite(fm))
            throw NonFiniteError("quadrature: non-finite integrand sample");
        k15 += kron_w[i] * (fp + fm);
        if (i % 2 == 0) g7 += gauss_w[i / 2] * (fp + fm);
    }
    k15 *= half;
    g7 *= half;
    const double d = std::abs(k15 - g7);
    err = std::min(d, std::pow(200.0 * d, 1.5));
    return k15;
}

double quad_interval(const ScalarFn& f, double a, double b, const ToleranceSpec& tol,
                     double total_len) {
    std::vector<Panel> stack{{a, b}};
    double sum = 0.0;
    int panels = 0;
    while (!stack.empty()) {
        if (++panels > tol.max_steps) throw MaxStepsError("quadrature: max_steps exceeded");
        const Panel p = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double s = g7k15(f, p.a, p.b, err);
        const double local_tol =
            std::max(tol.abs_tol, tol.rel_tol * std::abs(s)) * std::max((p.b - p.a) / total_len, 1e-3);
        const bool width_floor = std::abs(p.b - p.a) <= 1e-14 * (std::abs(p.a) + std::abs(p.b) + 1.0);
        if (err <= local_tol || width_floor) {
            sum += s;
            continue;
        }
        const double mid = 0.5 * (p.a + p.b);
        stack.push_back({mid, p.b});
        stack.push_back({p.a, mid});
    }
    return sum;
}

}  // namespace

double quadrature(const ScalarFn& f, double a, double b, const ToleranceSpec& tol) {
    tol.validate();
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    return sign * quad_interval(f, lo, hi, tol, hi - lo);
}

double quadrature_split(const ScalarFn& f, double a, double b, std::span<const double> breakpoints,
                        const ToleranceSpec& tol) {
    tol.validate();
    if (a == b) return 0.0;
    if (!(b > a)) throw std::invalid_argument("quadrature_split: requires a < b");
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) sum += quad_interval(f, cuts[i], cuts[i + 1], tol, b - a);
    return sum;
}

double finite_diff(const ScalarFn& f, double x, int order, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff: h must be > 0");
    if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
    if (order == 2) return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    throw std::invalid_argument("finite_diff: order must be 1 or 2");
}

double default_fd_step(double x) { return 1e-5 * std::max(1.0, std::abs(x)); }

MaxResult maximize_1d(const ScalarFn& f, double lo, double hi, double xtol) {
    if (!(hi > lo)) throw std::invalid_argument("maximize_1d: empty interval");
    constexpr int kGrid = 257;
    double best_x = lo, best_f = f(lo);
    for (int i = 1; i < kGrid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double cell = (hi - lo) / (kGrid - 1);
    double a = std::max(lo, best_x - cell);
    double b = std::min(hi, best_x + cell);

    // Golden-section polish; keeps the better of the two interior probes.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    MaxResult res{xm, fm};
    if (f1 > res.value) res = {x1, f1};
    if (f2 > res.value) res = {x2, f2};
    if (best_f > res.value) res = {best_x, best_f};
    return res;
}

namespace {

FitResult least_squares_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
    FitResult r;
    r.exponent = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.exponent * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - (r.intercept + r.exponent * x[i]);
        ss += d * d;
    }
    r.residual_rms = std::sqrt(ss / n);
    return r;
}

}  // namespace

FitResult fit_exponent(std::span<const double> tau, std::span<const double> y) {
    if (tau.size() != y.size()) throw std::invalid_argument("fit_exponent: size mismatch");
    if (tau.size() < 8) throw std::invalid_argument("fit_exponent: need at least 8 points");
    std::vector<double> lx(tau.size()), ly(y.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_exponent: requires tau > 0 and y > 0");
        lx[i] = std::log(tau[i]);
        ly[i] = std::log(y[i]);
    }
    return least_squares_line(lx, ly);
}

FitResult fit_exponent_window(std::span<const double> tau, std::span<const double> y, double lo,
                              double hi) {
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < tau.size(); ++i)
        if (tau[i] >= lo && tau[i] <= hi) {
            tw.push_back(tau[i]);
            yw.push_back(y[i]);
        }
    return fit_exponent(tw, yw);
}

FitResult fit_log_linear(std::span<const double> tau, std::span<const double> y) {
    if (tau.size() != y.size()) throw std::invalid_argument("fit_log_linear: size mismatch");
    if (tau.size() < 2) throw std::invalid_argument("fit_log_linear: need at least 2 points");
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw std::invalid_argument("fit_log_linear: requires y > 0");
        ly[i] = std::log(y[i]);
    }
    return least_squares_line(tau, ly);
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
    v.back() = stop;
    return v;
}

std::vector<double> logspace(double start, double stop, int count) {
    if (!(start > 0.0) || !(stop > 0.0))
        throw std::invalid_argument("logspace: endpoints must be positive");
    auto v = linspace(std::log(start), std::log(stop), count);
    for (double& x : v) x = std::exp(x);
    v.back() = stop;
    return v;
}

}  // namespace numerics
}  // namespace igeo
