#pragma once

#include <functional>
#include <optional>

#include "igeo/model.hpp"

namespace igeo::embedding {

/// An embedding constraint mu2 = mu2(mu1, sigma1). When linear_coeffs is set
/// the constraint must be the linear family a1*mu1 + a2*sigma1.
struct EmbeddingSpec {
    std::function<double(double mu1, double sigma1)> constraint;
    std::optional<std::pair<double, double>> linear_coeffs;

    static EmbeddingSpec linear(double a1, double a2);
};

struct InducedMetricReport {
    double A_mumu = 1.0;      // 1 + (d mu2/d mu1)^2
    double A_musigma = 0.0;   // (d mu2/d mu1)(d mu2/d sigma1)
    double A_sigmasigma = 2;  // 2 + (d mu2/d sigma1)^2 / 2
    double r = 0.0;
};

struct InducedCoefficients {
    double A_mumu;
    double A_musigma;
    double A_sigmasigma;
};

InducedCoefficients induced_coefficients(double dmu2_dmu1, double dmu2_dsigma1);

/// r = A_musigma / sqrt(A_mumu * A_sigmasigma); zero iff either partial is zero.
double correlation_from_partials(double dmu2_dmu1, double dmu2_dsigma1);

/// Same normalization evaluated on the linear family's coefficients.
double correlation_from_linear(double a1, double a2);

/// Numerically pulls the ambient metric (dmu1^2 + dmu2^2 + 4 dsigma1^2)/sigma1^2
/// back through the graph map (mu1, sigma1) -> (mu1, mu2(mu1,sigma1), sigma1)
/// using a finite-difference Jacobian, then extracts the induced coefficients.
/// Agreement with the analytic operations is O(h^2).
InducedMetricReport pullback_metric_oracle(const EmbeddingSpec& spec, double mu1, double sigma1,
                                           double h);

/// (mu1, sigma1) -> (sqrt(A_mumu) mu1, sqrt(A_sigmasigma) sigma1).
std::pair<double, double> rescale_variables(double mu1, double sigma1, double A_mumu,
                                            double A_sigmasigma);

}  // namespace igeo::embedding
