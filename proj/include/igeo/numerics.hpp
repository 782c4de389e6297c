#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "igeo/errors.hpp"

namespace igeo {

/// Accuracy request shared by the adaptive kernels.
struct ToleranceSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_steps = 1000000;

    void validate() const;  // throws std::invalid_argument
};

/// Least-squares slope of log y against log tau (or plain tau for rate fits).
struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

namespace numerics {

using Rhs = std::function<void(double tau, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;
using ScalarFn = std::function<double(double)>;

struct OdeSolution {
    std::vector<double> tau;
    std::vector<Eigen::VectorXd> states;
    long accepted_steps = 0;
    long rejected_steps = 0;
};

/// Adaptive Dormand-Prince 5(4). Samples are the accepted steps; the end of
/// the span is always hit exactly.
OdeSolution ode_solve(const Rhs& rhs, const Eigen::VectorXd& y0, double tau0, double tau1,
                      const ToleranceSpec& tol = {});

/// Same integrator, but steps are clamped so every grid point is hit exactly
/// and the returned samples are exactly the grid.
OdeSolution ode_solve_grid(const Rhs& rhs, const Eigen::VectorXd& y0,
                           std::span<const double> grid, const ToleranceSpec& tol = {});

/// Adaptive Gauss-Kronrod 7/15 panel quadrature.
double quadrature(const ScalarFn& f, double a, double b, const ToleranceSpec& tol = {});

/// Quadrature with caller-supplied interior breakpoints (they must lie in
/// [a, b]; anything outside is ignored). Used when the caller knows where the
/// integrand has structure that a first panel would not sample.
double quadrature_split(const ScalarFn& f, double a, double b, std::span<const double> breakpoints,
                        const ToleranceSpec& tol = {});

/// Central difference of order 1 or 2, error O(h^2).
double finite_diff(const ScalarFn& f, double x, int order, double h);

double default_fd_step(double x);  // 1e-5 * max(1, |x|)

struct MaxResult {
    double argmax = 0.0;
    double value = 0.0;
};

/// Coarse grid scan followed by golden-section polish. Returns the boundary
/// point when f is monotone on the interval.
MaxResult maximize_1d(const ScalarFn& f, double lo, double hi, double xtol = 1e-10);

/// Least-squares fit of log y vs log tau. Requires >= 8 points, y > 0, tau > 0.
FitResult fit_exponent(std::span<const double> tau, std::span<const double> y);

/// fit_exponent restricted to tau in [lo, hi] (the asymptotic-regime window).
FitResult fit_exponent_window(std::span<const double> tau, std::span<const double> y,
                              double lo = 1e2, double hi = 1e4);

/// Least-squares fit of log y vs tau itself: y ~ exp(intercept + exponent*tau).
FitResult fit_log_linear(std::span<const double> tau, std::span<const double> y);

/// Linearly or logarithmically spaced grids (log requires positive endpoints).
std::vector<double> linspace(double start, double stop, int count);
std::vector<double> logspace(double start, double stop, int count);

}  // namespace numerics
}  // namespace igeo
