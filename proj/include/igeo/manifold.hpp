#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "igeo/model.hpp"

namespace igeo::manifold {

/// Per-pair diagonalization data of the 2x2 block sigma^2*M = [[1,r],[r,2]]:
/// eigenvalues alpha_-, alpha_+, eigenvector slopes a0 < 0 < a1, and the
/// change-of-basis matrix E with columns (1,a0), (1,a1).
/// Templated on the scalar so tests can evaluate with complex-step arguments.
template <class S>
struct PairDiagonalization {
    S delta;        // 1 + 4 r^2
    S sqrt_delta;
    S alpha_plus;   // (3 + sqrt(delta)) / 2
    S alpha_minus;  // (3 - sqrt(delta)) / 2
    S a0;           // (1 - sqrt(delta)) / (2r)
    S a1;           // (1 + sqrt(delta)) / (2r)
    Eigen::Matrix<S, 2, 2> E;
    Eigen::Matrix<S, 2, 2> E_inv;

    /// sqrt(alpha_+ / (2 alpha_-)), the primed-frame rescale factor.
    S primed_scale() const {
        using std::sqrt;
        return sqrt(alpha_plus / (S(2) * alpha_minus));
    }

    /// Diagonalized block diag(alpha_-, alpha_+) / sigma^2 with
    /// sigma = a0 mu~ + a1 sigma~.
    Eigen::Matrix<S, 2, 2> D(S sigma) const {
        Eigen::Matrix<S, 2, 2> d;
        d << alpha_minus / (sigma * sigma), S(0), S(0), alpha_plus / (sigma * sigma);
        return d;
    }
};

template <class S>
PairDiagonalization<S> diagonalize(S r) {
    if constexpr (std::is_floating_point_v<S>) {
        if (!(r > 0.0) || !(r < 1.0))
            throw std::invalid_argument("diagonalize: r out of (0,1); use the uncorrelated path for r=0");
    }
    using std::sqrt;
    PairDiagonalization<S> d;
    d.delta = S(1) + S(4) * r * r;
    d.sqrt_delta = sqrt(d.delta);
    d.alpha_plus = (S(3) + d.sqrt_delta) / S(2);
    d.alpha_minus = (S(3) - d.sqrt_delta) / S(2);
    d.a0 = (S(1) - d.sqrt_delta) / (S(2) * r);
    d.a1 = (S(1) + d.sqrt_delta) / (S(2) * r);
    d.E << S(1), S(1), d.a0, d.a1;
    const S det = d.a1 - d.a0;  // = sqrt(delta)/r > 0
    d.E_inv << d.a1 / det, S(-1) / det, -d.a0 / det, S(1) / det;
    return d;
}

using Diag = PairDiagonalization<double>;

std::vector<Diag> diagonalize_all(const ModelParams& params);

/// Per-pair Fisher-Rao block (1/sigma^2) [[1, r], [r, 2]].
/// r = 0 is the uncorrelated limit and must be requested explicitly.
Eigen::Matrix2d metric_block(double r, double sigma, bool allow_zero_r = false);

/// sigma^2/(2-r^2) [[2, -r], [-r, 1]]; inverse of metric_block.
Eigen::Matrix2d metric_block_inverse(double r, double sigma, bool allow_zero_r = false);

/// The determinant form the statistical-volume pipeline uses:
/// prod_k (2 - r_k^2) / sigma_k^2.
double volume_metric_determinant(const ModelParams& params, const Point& point);

/// Determinant of the assembled 2l x 2l block metric:
/// prod_k (2 - r_k^2) / sigma_k^4. Differs from the volume form by
/// prod_k sigma_k^2; both are exposed on purpose and never reconciled.
double block_metric_determinant(const ModelParams& params, const Point& point);

/// Scalar curvature -2 sum_k 1/(2 - r_k^2); accepts r_k in [0, 1).
double scalar_curvature(const Eigen::VectorXd& r);

/// The three nonzero connection coefficients of the asymptotic diagonalized
/// metric: Gamma^1_12, Gamma^2_11, Gamma^2_22 (functions of sigma-tilde).
struct ChristoffelSymbols {
    double g112;  // -1/sigma
    double g211;  // (alpha_-/alpha_+) / sigma
    double g222;  // -1/sigma
};

ChristoffelSymbols christoffels_asymptotic(double r, double sigma_tilde);

/// Covariant R_1212 of the asymptotic diagonalized metric,
/// -(alpha_-/a1^2)/sigma^4. This is the value consistent with the connection
/// coefficients above (and what a finite-difference curvature oracle returns).
double riemann_1212_covariant(double r, double sigma_tilde);

/// Reference form of the component, -(alpha_-/a1^2)/sigma^2. Equals the
/// covariant component only at sigma = 1; kept for report fidelity.
double riemann_1212_reference(double r, double sigma_tilde);

/// Map a point between frames (per-pair linear maps; chains through tilde).
/// Throws std::domain_error when the image violates the target frame's
/// positivity invariant.
Point frame_transform(const Point& point, Frame target, const ModelParams& params);

/// Per-pair curvature quantities evaluated at given sigma-tilde values.
struct CurvatureBundle {
    std::vector<ChristoffelSymbols> christoffels;  // one per pair
    std::vector<double> riemann_1212;              // covariant component per pair
    std::vector<double> riemann_1212_reference;      // reference form per pair
    double scalar = 0.0;
};

CurvatureBundle curvature_bundle(const ModelParams& params, const Eigen::VectorXd& sigma_tilde);

}  // namespace igeo::manifold
