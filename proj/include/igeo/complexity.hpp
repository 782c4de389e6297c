#pragma once

#include <span>
#include <vector>

#include "igeo/model.hpp"
#include "igeo/numerics.hpp"

namespace igeo::complexity {

/// Sigma(r, lambda, xi) = a1*xi / (-4 lambda sqrt(alpha_+/2alpha_-) a0) > 0.
double sigma_fn(double r, double lambda, double xi);

/// Lambda_1(r) = 2 r sqrt(2-r^2) / (1 + sqrt(1+4r^2)); accepts r in (0, 1].
double lambda1(double r);

/// Lambda_2 = sqrt((1+4r^2)(2-r^2))/r * ln(Sigma)/lambda.
double lambda2(double r, double lambda, double xi);

/// Lambda_2 assembled from the two-term bracket of the volume display
/// instead of the compact form; algebraically identical, asserted in tests.
double lambda2_bracket(double r, double lambda, double xi);

struct PairConstants {
    double Sigma;
    double Lambda1;
    double Lambda2;
};

std::vector<PairConstants> constants(const ModelParams& params);

/// The per-pair volume integrand sqrt(2-r^2) (A w + B w^2)/(C w + D w^2) with
/// w = exp(-lambda tau'), evaluated in the w-reduced stable form.
double volume_integrand(double tau_prime, double r, double lambda, double xi);

/// prod_k { Lambda_1 + Lambda_2 / tau }, the closed-form volume.
double volume_closed_form(double tau, const ModelParams& params);

/// prod_k { sqrt(2-r_k^2)/tau * integral_0^tau integrand_k }, by adaptive
/// quadrature. Differs from the closed form by the dropped lower-limit
/// constant, an O(1/tau) term.
double volume_numeric(double tau, const ModelParams& params, const ToleranceSpec& tol = {});

/// Information geometric entropy, sum_k log(Lambda_1 + Lambda_2/tau) = log V.
double ige(double tau, const ModelParams& params);

/// prod_k Lambda_1(r_k), the tau -> infinity saturation value of V.
double saturation(const ModelParams& params);

/// Direct 2-D quadrature of the Fisher density over the geodesic box of pair
/// k at time tau' (bounds are min/max of the closed-form path coordinates on
/// [0, tau']). Both determinant conventions are reported side by side.
struct BoxVolumes {
    double volume_density;   // density sqrt(2-r^2)/sigma
    double block_density;  // density sqrt(2-r^2)/sigma^2
    double mu_lo, mu_hi, sigma_lo, sigma_hi;
};

BoxVolumes box_volume_oracle(double tau_prime, const ModelParams& params, int k,
                             const ToleranceSpec& tol = {});

struct ComplexityCurve {
    std::vector<double> tau;
    std::vector<double> v_closed;
    std::vector<double> v_numeric;  // empty when numeric evaluation is off
    std::vector<double> entropy;    // log of v_closed
    double saturation = 0.0;
    FitResult decay;                 // fit of |v_closed - saturation| vs tau
    bool decay_fit_ok = false;       // false when the grid misses the fit window
    double lambda2_route_delta = 0;  // max |lambda2 - lambda2_bracket| over pairs
};

ComplexityCurve build_curve(const ModelParams& params, std::span<const double> tau_grid,
                            const ToleranceSpec& tol = {}, bool with_numeric = true);

/// Fit the decay exponent of |v - sat| over the tau window [lo, hi].
/// Expected -1 (leading 1/tau correction) for any l.
FitResult decay_analysis(std::span<const double> tau, std::span<const double> v, double sat,
                         double lo = 1e2, double hi = 1e4);

}  // namespace igeo::complexity
