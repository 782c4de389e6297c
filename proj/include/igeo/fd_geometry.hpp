#pragma once

// Finite-difference differential-geometry oracles. Verification-only module:
// everything here is derived from a metric field by central differences and
// must stay independent of the closed-form expressions it is used to check.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace igeo::fdgeom {

using MetricFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Gamma[a](i,j) = Christoffel symbols from central differences of the metric.
std::vector<Eigen::MatrixXd> christoffels_fd(const MetricFn& g, const Eigen::VectorXd& x,
                                             double h = 1e-5);

/// Covariant R_{ijkl} from second differences of the metric plus the
/// quadratic Christoffel products. Flattened index: ((i*n + j)*n + k)*n + l.
std::vector<double> riemann_covariant_fd(const MetricFn& g, const Eigen::VectorXd& x,
                                         double h = 1e-4);

/// Ricci-contracted scalar curvature.
double ricci_scalar_fd(const MetricFn& g, const Eigen::VectorXd& x, double h = 1e-4);

/// Geodesic acceleration -Gamma^a_{ij} v^i v^j from finite-difference symbols.
Eigen::VectorXd geodesic_acceleration_fd(const MetricFn& g, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& v, double h = 1e-5);

}  // namespace igeo::fdgeom
