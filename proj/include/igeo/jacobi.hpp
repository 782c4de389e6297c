#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "igeo/geodesics.hpp"
#include "igeo/model.hpp"
#include "igeo/numerics.hpp"

namespace igeo::jacobi {

/// Integration constants of the asymptotic deviation components of one pair.
struct PairJacobiConstants {
    double c0 = 1.0, c1 = 1.0, c2 = 1.0, c3 = 1.0;
};

using JacobiConstants = std::vector<PairJacobiConstants>;

/// The reference form of the second asymptotic component carries
/// tau*e^{-2 lambda tau}; the limiting constant-coefficient system has a
/// double root at -lambda, so the substitution-verified basis is
/// tau*e^{-lambda tau}. Both are exposed; verify_limiting_forms() decides
/// which one annihilates the limiting system.
enum class SecondComponentForm { reference, verified };

/// J^{2k-1} = C0 + C1 e^{-2 lambda tau};
/// J^{2k}   = C2 e^{-lambda tau} + C3 tau e^{-2 lambda tau}   (reference)
///            C2 e^{-lambda tau} + C3 tau e^{-lambda tau}     (verified)
std::pair<double, double> asymptotic_components(double tau, const PairJacobiConstants& c,
                                                double lambda,
                                                SecondComponentForm form = SecondComponentForm::reference);

struct LimitingSubstitutionFindings {
    bool const_plus_exp2_ok;      // C0 + C1 e^{-2 lt} annihilates the first equation
    bool exp_lambda_ok;           // e^{-lt} annihilates the second equation
    bool tau_exp_lambda_ok;       // tau e^{-lt} annihilates the second equation
    bool tau_exp_two_lambda_ok;   // tau e^{-2lt} (the reference form)
    double max_residual_tau_exp_two_lambda;
};

/// Plug each candidate form into the limiting constant-coefficient system and
/// report which ones satisfy it (residual below 1e-12 of the term scale).
LimitingSubstitutionFindings verify_limiting_forms(double lambda);

/// Full covariant deviation equation on the asymptotic diagonalized metric:
/// the second covariant derivative expanded along the curve plus the
/// curvature term, solved for d2J/dtau2. Exact for deviation fields of that
/// metric; geodesic accelerations are derived from the diagonalized system.
Eigen::VectorXd jlc_rhs_general(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ,
                                const geodesics::GeodesicState& tilde_state,
                                const ModelParams& params);

/// Partially expanded per-pair reference equations. The second
/// component matches the covariant expansion identically; the first drops one
/// Gamma*Gamma channel and agrees only asymptotically (see tests).
Eigen::VectorXd jlc_rhs_explicit_pair(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ,
                                      const geodesics::GeodesicState& tilde_state,
                                      const ModelParams& params);

/// The reduced asymptotic system with its exponentially decaying couplings.
Eigen::VectorXd jlc_rhs_reduced(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ, double tau,
                                const ModelParams& params);

struct JacobiTrajectory {
    std::vector<double> tau;
    std::vector<Eigen::VectorXd> J;
    std::vector<Eigen::VectorXd> dJ;
};

JacobiTrajectory integrate_reduced(const ModelParams& params, std::span<const double> tau_grid,
                                   const Eigen::VectorXd& J0, const Eigen::VectorXd& dJ0,
                                   const ToleranceSpec& tol = {});

/// Integrate the general equation along the closed-form geodesic (tilde frame).
JacobiTrajectory integrate_general(const ModelParams& params, std::span<const double> tau_grid,
                                   const Eigen::VectorXd& J0, const Eigen::VectorXd& dJ0,
                                   const ToleranceSpec& tol = {});

/// Least-squares extraction of C0..C3 from a trajectory on the window
/// tau*lambda in [window_lo, window_hi].
JacobiConstants extract_constants(const JacobiTrajectory& traj, const ModelParams& params,
                                  double window_lo = 8.0, double window_hi = 12.0,
                                  SecondComponentForm form = SecondComponentForm::verified);

/// Exact intensity: sum_k (alpha_-/a1^2)(J^{2k-1})^2/sigma~^2
///                      + (alpha_+/a1^2)(J^{2k})^2/sigma~^2.
double intensity_tilde_exact(const Eigen::VectorXd& J, const Eigen::VectorXd& sigma_tilde,
                             const ModelParams& params);

/// Leading asymptotic intensity sum_k A~_k (C0 xi / 8 lambda^2)^2 e^{2 lambda tau}.
double intensity_tilde_asymptotic(double tau, const JacobiConstants& c, const ModelParams& params);

/// (J~^{2k-1}, J~^{2k}) -> original-frame components (J~1 + J~2, a0 J~1 + a1 J~2).
std::pair<double, double> components_original(double jt1, double jt2, double r);

/// Original-frame intensity via the full block quadratic form.
double intensity_original_exact(const Eigen::VectorXd& J_original,
                                const Eigen::VectorXd& sigma_original, const ModelParams& params);

/// sum_k A_k(r_k) j^2(tau; lambda_k) with the reference attenuation A_k.
double intensity_original_asymptotic(double tau, const JacobiConstants& c,
                                     const ModelParams& params);

/// j^2(tau) = (C0 xi / 8 lambda^2)^2 e^{2 lambda tau}.
double elementary_j2(double tau, double c0, double xi, double lambda);

/// Unconstrained-model baseline: sum over 2l rates of j^2, no attenuation.
double larger_model_intensity(double tau, const Eigen::VectorXd& lambdas,
                              const Eigen::VectorXd& c0, const Eigen::VectorXd& xi);

/// Attenuation factors. The definitional tilde form alpha_-/a1^2 is primary
/// (it attains the stated maximum 3-2sqrt2 at sqrt(2-sqrt2)); the reference
/// 2r variant and both original-frame bracket variants are reported alongside.
double attenuation_tilde(double r);             // alpha_-/a1^2 = 2r^2(3-sqrt(D))/(1+sqrt(D))^2
double attenuation_tilde_reference(double r);     // 2r  (3-sqrt(D))/(1+sqrt(D))^2
double attenuation_original_reference(double r);  // 4r^2 [1 + 2r a0 + a0^2] / (1 + a1)^2
double attenuation_original_alt(double r);      // [1 + 2r a0 + 2 a0^2] / a1^2

struct AttenuationExtremum {
    double argmax = 0.0;
    double max = 0.0;
};

struct AttenuationReport {
    std::vector<double> r;
    std::vector<double> tilde_definitional;
    std::vector<double> tilde_reference;
    std::vector<double> original_reference;
    std::vector<double> original_alt;
    std::vector<double> ratio_reference;  // sqrt(A) embedded/larger, reference bracket
    std::vector<double> ratio_alt;      // sqrt(A) with the alternate bracket

    AttenuationExtremum tilde_definitional_max;
    AttenuationExtremum tilde_reference_max;
    AttenuationExtremum original_reference_max;
    AttenuationExtremum original_alt_max;

    double sup_sqrt_ratio_reference = 0.0;
    double sup_sqrt_ratio_alt = 0.0;

    // Checks against the reference constants.
    bool tilde_matches_stated_max = false;       // 3-2sqrt2 at sqrt(2-sqrt2)
    bool reference_ratio_below_04 = false;       // sup sqrt(A_reference) <= 0.4
    bool alt_ratio_below_04 = false;             // sup sqrt(A_alt) <= 0.4
    bool original_max_matches_015 = false;       // |max - 0.15| <= 0.01 (either variant)
    bool original_argmax_matches_065 = false;    // |argmax - 0.65| <= 0.01 (either variant)
    bool all_below_one = false;
};

AttenuationReport attenuation_report(std::span<const double> r_grid);

}  // namespace igeo::jacobi
