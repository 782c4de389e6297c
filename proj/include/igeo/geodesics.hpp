#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "igeo/manifold.hpp"
#include "igeo/model.hpp"
#include "igeo/numerics.hpp"

namespace igeo::geodesics {

/// Positions and velocities of all pairs in one frame; layout matches Point.
struct GeodesicState {
    Frame frame = Frame::primed;
    Eigen::VectorXd pos;  // (mu_1, sigma_1, ..., mu_l, sigma_l)
    Eigen::VectorXd vel;
};

/// Geodesic accelerations of the full correlated metric (original frame).
Eigen::VectorXd rhs_original(const GeodesicState& state, const ModelParams& params);

/// Accelerations of the asymptotic diagonalized system (tilde frame).
Eigen::VectorXd rhs_diagonalized(const GeodesicState& state, const ModelParams& params);

/// Accelerations of the rescaled system (primed frame).
Eigen::VectorXd rhs_primed(const GeodesicState& state, const ModelParams& params);

/// Closed-form primed geodesic and its first two tau-derivatives.
/// Templated so tests can run complex-step derivatives in xi or lambda.
template <class S>
struct PrimedPoint {
    S mu, sigma;
    S dmu, dsigma;
    S d2mu, d2sigma;
};

template <class S>
PrimedPoint<S> closed_form_primed(S tau, S xi, S lambda) {
    using std::exp;
    const S c = xi * xi / (S(8) * lambda * lambda);
    const S v = exp(S(-2) * lambda * tau);  // e^{-2 lambda tau}
    const S e1 = exp(-lambda * tau);
    const S u = v + c;
    PrimedPoint<S> p;
    p.mu = (xi * xi / (S(2) * lambda)) / u - S(4) * lambda;
    p.sigma = xi * e1 / u;
    p.dmu = xi * xi * v / (u * u);
    p.dsigma = xi * lambda * e1 * (v - c) / (u * u);
    p.d2mu = S(2) * lambda * xi * xi * v * (v - c) / (u * u * u);
    p.d2sigma = xi * lambda * lambda * e1 * (v * v - S(6) * v * c + c * c) / (u * u * u);
    return p;
}

/// The pair-k geodesic in the original macrovariables, transcribed from the
/// combined closed-form display (prefactors sqrt(alpha_+/2 alpha_-), a0, a1).
std::pair<double, double> closed_form_original(double tau, const ModelParams& params, int k);

/// Closed-form state of all pairs mapped into the requested frame.
GeodesicState closed_form_state(const ModelParams& params, double tau, Frame frame);

/// Defect of the closed form under the primed geodesic system, evaluated from
/// the analytic derivatives (no sigma floor; pure algebra, usable at any tau).
std::pair<double, double> closed_form_residual(double tau, double xi, double lambda);

struct Trajectory {
    ModelParams params;
    Frame frame = Frame::primed;
    std::vector<double> tau;
    std::vector<Eigen::VectorXd> pos;
    std::vector<Eigen::VectorXd> vel;
    long accepted_steps = 0;
    ToleranceSpec tol;
};

/// Integrate the geodesic system in the given frame over the tau grid.
/// Pairs are decoupled blocks and are integrated independently, so an l-pair
/// run is exactly the merge of l single-pair runs.
Trajectory integrate_geodesic(const ModelParams& params, Frame frame,
                              const GeodesicState& initial, std::span<const double> tau_grid,
                              const ToleranceSpec& tol = {});

/// Re-express a trajectory in another frame (per-pair linear maps on
/// positions and velocities).
Trajectory to_frame(const Trajectory& traj, Frame target, const ModelParams& params);

/// min over r in (0,1) of |a1/a0|, the constant appearing in the
/// working-hypothesis bound (attained as r -> 1).
double min_abs_a1_over_a0();

/// mu-tilde / sigma-tilde along a trajectory for one pair, with the fitted
/// exponential decay rate and the bound check.
struct HypothesisRatio {
    std::vector<double> tau;
    std::vector<double> ratio;
    double fitted_rate = 0.0;      // |ratio| ~ exp(-fitted_rate * tau)
    double bound = 0.0;            // min_r |a1/a0|
    double final_abs_ratio = 0.0;
    bool satisfied = false;        // final |ratio| at least 10x below the bound
};

HypothesisRatio hypothesis_ratio(const Trajectory& traj, const ModelParams& params, int pair = 0);

/// Squared line-element speed of a state. Original frame uses the full block
/// metric; tilde and primed use the asymptotic diagonalized metric (constant
/// along trajectories of the corresponding geodesic systems).
double metric_speed(const GeodesicState& state, const ModelParams& params);

}  // namespace igeo::geodesics
