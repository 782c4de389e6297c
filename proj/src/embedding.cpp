#include "igeo/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "igeo/errors.hpp"

namespace igeo::embedding {

EmbeddingSpec EmbeddingSpec::linear(double a1, double a2) {
    EmbeddingSpec s;
    s.constraint = [a1, a2](double mu1, double sigma1) { return a1 * mu1 + a2 * sigma1; };
    s.linear_coeffs = {a1, a2};
    return s;
}

InducedCoefficients induced_coefficients(double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("induced_coefficients: partials must be finite");
    return {1.0 + p * p, p * q, 2.0 + 0.5 * q * q};
}

double correlation_from_partials(double p, double q) {
    const auto c = induced_coefficients(p, q);
    if (c.A_musigma == 0.0) return 0.0;  // exact: zero iff either partial is zero
    return c.A_musigma / (std::sqrt(c.A_mumu) * std::sqrt(c.A_sigmasigma));
}

double correlation_from_linear(double a1, double a2) { return correlation_from_partials(a1, a2); }

InducedMetricReport pullback_metric_oracle(const EmbeddingSpec& spec, double mu1, double sigma1,
                                           double h) {
    if (!(sigma1 > kSigmaFloor))
        throw SingularityError("pullback_metric_oracle: sigma1 at the singular floor");
    if (!(h > 0.0)) throw std::invalid_argument("pullback_metric_oracle: h must be > 0");
    if (!spec.constraint) throw std::invalid_argument("pullback_metric_oracle: missing constraint");

    // Graph map F(mu1, sigma1) = (mu1, mu2(mu1, sigma1), sigma1) into the
    // ambient 3-manifold with metric diag(1, 1, 4)/sigma1^2; pull back through
    // the finite-difference Jacobian.
    auto mu2 = spec.constraint;
    const double fpp = mu2(mu1 + h, sigma1), fpm = mu2(mu1 - h, sigma1);
    const double fsp = mu2(mu1, sigma1 + h), fsm = mu2(mu1, sigma1 - h);
    if (!std::isfinite(fpp) || !std::isfinite(fpm) || !std::isfinite(fsp) || !std::isfinite(fsm))
        throw NonFiniteError("pullback_metric_oracle: constraint sample not finite");
    Eigen::Matrix<double, 3, 2> jac;
    jac << 1.0, 0.0, (fpp - fpm) / (2.0 * h), (fsp - fsm) / (2.0 * h), 0.0, 1.0;
    Eigen::Vector3d ambient(1.0, 1.0, 4.0);
    const Eigen::Matrix2d G =
        jac.transpose() * ambient.asDiagonal() * jac / (sigma1 * sigma1);

    InducedMetricReport rep;
    const double s2 = sigma1 * sigma1;
    rep.A_mumu = G(0, 0) * s2;
    rep.A_musigma = G(0, 1) * s2;
    rep.A_sigmasigma = 0.5 * G(1, 1) * s2;
    rep.r = rep.A_musigma == 0.0
                ? 0.0
                : rep.A_musigma / (std::sqrt(rep.A_mumu) * std::sqrt(rep.A_sigmasigma));
    return rep;
}

std::pair<double, double> rescale_variables(double mu1, double sigma1, double A_mumu,
                                            double A_sigmasigma) {
    return {std::sqrt(A_mumu) * mu1, std::sqrt(A_sigmasigma) * sigma1};
}

}  // namespace igeo::embedding
