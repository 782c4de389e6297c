#include "igeo/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "igeo/geodesics.hpp"
#include "igeo/manifold.hpp"

namespace igeo::complexity {

namespace {

struct PairAlgebra {
    double A, B, C, D;  // numerator/denominator coefficients of the volume integrand
    double sqrt2mr2;
    manifold::Diag d;
};

PairAlgebra pair_algebra(double r, double lambda, double xi) {
    if (!(lambda > 0.0) || !(xi > 0.0))
        throw std::invalid_argument("complexity: lambda and xi must be > 0");
    PairAlgebra pa;
    pa.d = manifold::diagonalize(r);
    const double f = pa.d.primed_scale();
    pa.A = xi;
    pa.B = -4.0 * lambda * f;
    pa.C = pa.d.a1 * xi;
    pa.D = -4.0 * lambda * f * pa.d.a0;  // a0 < 0, so D > 0
    pa.sqrt2mr2 = std::sqrt(2.0 - r * r);
    return pa;
}

}  // namespace

double sigma_fn(double r, double lambda, double xi) {
    const auto pa = pair_algebra(r, lambda, xi);
    return pa.C / pa.D;
}

double lambda1(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("lambda1: r out of (0,1]");
    const double sd = std::sqrt(1.0 + 4.0 * r * r);
    return 2.0 * r * std::sqrt(2.0 - r * r) / (1.0 + sd);
}

double lambda2(double r, double lambda, double xi) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("lambda2: r out of (0,1]");
    const double delta = 1.0 + 4.0 * r * r;
    return std::sqrt(delta * (2.0 - r * r)) / r * std::log(sigma_fn(r, lambda, xi)) / lambda;
}

double lambda2_bracket(double r, double lambda, double xi) {
    // The two-term bracket of the volume display times ln(Sigma).
    const double sd = std::sqrt(1.0 + 4.0 * r * r);
    const double n = 2.0 * r * std::sqrt(2.0 - r * r);
    const double bracket = n / ((1.0 + sd) * lambda) - n / ((1.0 - sd) * lambda);
    return bracket * std::log(sigma_fn(r, lambda, xi));
}

std::vector<PairConstants> constants(const ModelParams& params) {
    std::vector<PairConstants> out;
    out.reserve(params.l());
    for (int k = 0; k < params.l(); ++k)
        out.push_back({sigma_fn(params.r[k], params.lambda[k], params.xi[k]), lambda1(params.r[k]),
                       lambda2(params.r[k], params.lambda[k], params.xi[k])});
    return out;
}

double volume_integrand(double tau_prime, double r, double lambda, double xi) {
    if (!(tau_prime >= 0.0)) throw std::invalid_argument("volume_integrand: tau' must be >= 0");
    const auto pa = pair_algebra(r, lambda, xi);
    // w-reduced form (w = e^{-lambda tau'}) stays finite for all tau' >= 0.
    const double w = std::exp(-lambda * tau_prime);
    const double den = pa.C + pa.D * w;
    if (!(den > 0.0) || !std::isfinite(den))
        throw NumericsError("volume_integrand: vanishing denominator");
    return pa.sqrt2mr2 * (pa.A + pa.B * w) / den;
}

double volume_closed_form(double tau, const ModelParams& params) {
    if (!(tau > 0.0)) throw std::invalid_argument("volume_closed_form: tau must be > 0");
    double v = 1.0;
    for (int k = 0; k < params.l(); ++k) {
        const double r = params.r[k];
        const double lam = params.lambda[k];
        const double sd = std::sqrt(1.0 + 4.0 * r * r);
        const double n = 2.0 * r * std::sqrt(2.0 - r * r);
        const double lnSigma = std::log(sigma_fn(r, lam, params.xi[k]));
        const double bracket = n / ((1.0 + sd) * lam) - n / ((1.0 - sd) * lam);
        v *= n / (1.0 + sd) + bracket * lnSigma / tau;
    }
    return v;
}

double volume_numeric(double tau, const ModelParams& params, const ToleranceSpec& tol) {
    if (!(tau > 0.0)) throw std::invalid_argument("volume_numeric: tau must be > 0");
    double v = 1.0;
    for (int k = 0; k < params.l(); ++k) {
        const double r = params.r[k], lam = params.lambda[k], xi = params.xi[k];
        // The transient lives on the scale 1/lambda; seed the adaptive panels there.
        const double bp[] = {2.0 / lam, 8.0 / lam, 32.0 / lam, 128.0 / lam};
        const double integral = numerics::quadrature_split(
            [&](double tp) { return volume_integrand(tp, r, lam, xi); }, 0.0, tau, bp, tol);
        v *= integral / tau;
    }
    return v;
}

double ige(double tau, const ModelParams& params) {
    if (!(tau > 0.0)) throw std::invalid_argument("ige: tau must be > 0");
    double s = 0.0;
    for (int k = 0; k < params.l(); ++k) {
        ModelParams one;
        one.r = params.r.segment(k, 1);
        one.lambda = params.lambda.segment(k, 1);
        one.xi = params.xi.segment(k, 1);
        const double term = volume_closed_form(tau, one);
        if (!(term > 0.0)) throw NumericsError("ige: non-positive volume factor");
        s += std::log(term);
    }
    return s;
}

double saturation(const ModelParams& params) {
    double p = 1.0;
    for (int k = 0; k < params.l(); ++k) p *= lambda1(params.r[k]);
    return p;
}

BoxVolumes box_volume_oracle(double tau_prime, const ModelParams& params, int k,
                             const ToleranceSpec& tol) {
    if (!(tau_prime > 0.0)) throw std::invalid_argument("box_volume_oracle: tau' must be > 0");
    if (k < 0 || k >= params.l()) throw std::invalid_argument("box_volume_oracle: bad pair");

    // Ordered bounds from a dense scan of the pair path on [0, tau'];
    // mu is non-monotone near tau = 0 when xi^2 > 8 lambda^2.
    constexpr int kScan = 1025;
    double mu_lo = 0, mu_hi = 0, s_lo = 0, s_hi = 0;
    for (int i = 0; i < kScan; ++i) {
        const double t = tau_prime * static_cast<double>(i) / (kScan - 1);
        const auto [mu, sig] = geodesics::closed_form_original(t, params, k);
        if (i == 0) {
            mu_lo = mu_hi = mu;
            s_lo = s_hi = sig;
        } else {
            mu_lo = std::min(mu_lo, mu);
            mu_hi = std::max(mu_hi, mu);
            s_lo = std::min(s_lo, sig);
            s_hi = std::max(s_hi, sig);
        }
    }
    if (!(s_lo > kSigmaFloor)) throw SingularityError("box_volume_oracle: sigma bound at floor");

    const double r = params.r[k];
    const double root = std::sqrt(2.0 - r * r);
    auto nested = [&](auto density) {
        return numerics::quadrature(
            [&](double sig) {
                return numerics::quadrature([&](double) { return density(sig); }, mu_lo, mu_hi,
                                            tol);
            },
            s_lo, s_hi, tol);
    };
    BoxVolumes out;
    out.volume_density = nested([&](double sig) { return root / sig; });
    out.block_density = nested([&](double sig) { return root / (sig * sig); });
    out.mu_lo = mu_lo;
    out.mu_hi = mu_hi;
    out.sigma_lo = s_lo;
    out.sigma_hi = s_hi;
    return out;
}

ComplexityCurve build_curve(const ModelParams& params, std::span<const double> tau_grid,
                            const ToleranceSpec& tol, bool with_numeric) {
    params.validate();
    ComplexityCurve c;
    c.tau.assign(tau_grid.begin(), tau_grid.end());
    c.saturation = saturation(params);
    for (double t : c.tau) {
        c.v_closed.push_back(volume_closed_form(t, params));
        c.entropy.push_back(ige(t, params));
        if (with_numeric) c.v_numeric.push_back(volume_numeric(t, params, tol));
    }
    for (int k = 0; k < params.l(); ++k) {
        const double d = std::abs(lambda2(params.r[k], params.lambda[k], params.xi[k]) -
                                  lambda2_bracket(params.r[k], params.lambda[k], params.xi[k]));
        c.lambda2_route_delta = std::max(c.lambda2_route_delta, d);
    }
    try {
        c.decay = decay_analysis(c.tau, c.v_closed, c.saturation, 1e2, 1e4);
        c.decay_fit_ok = true;
    } catch (const NumericsError&) {
        c.decay_fit_ok = false;  // grid does not cover the fit window; flagged, not fatal
    }
    return c;
}

FitResult decay_analysis(std::span<const double> tau, std::span<const double> v, double sat,
                         double lo, double hi) {
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const double d = std::abs(v[i] - sat);
        if (tau[i] >= lo && tau[i] <= hi && d > 0.0) {
            tw.push_back(tau[i]);
            yw.push_back(d);
        }
    }
    if (tw.size() < 8)
        throw NumericsError("decay_analysis: saturation window not covered by the curve");
    return numerics::fit_exponent(tw, yw);
}

}  // namespace igeo::complexity
