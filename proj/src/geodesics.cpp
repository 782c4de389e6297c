#include "igeo/geodesics.hpp"

#include <cmath>
#include <stdexcept>

namespace igeo::geodesics {

namespace {

void check_state(const GeodesicState& s, const ModelParams& p, Frame expect) {
    if (s.frame != expect) throw std::invalid_argument("geodesic rhs: wrong frame");
    if (s.pos.size() != 2 * p.l() || s.vel.size() != 2 * p.l())
        throw std::invalid_argument("geodesic rhs: state size mismatch");
}

void guard_sigma(double sigma) {
    if (!(sigma > kSigmaFloor))
        throw SingularityError("geodesic: sigma reached the singular floor (metric ~ 1/sigma^2)");
}

// Per-pair acceleration kernels; velocities quadratic, 1/sigma scaling.
struct PairAccel {
    double mu, sigma;
};

PairAccel accel_original(double r, double s, double dm, double ds) {
    guard_sigma(s);
    const double den = (2.0 - r * r) * s;
    return {(r * dm * dm + 4.0 * dm * ds + 2.0 * r * ds * ds) / den,
            (-dm * dm - 2.0 * r * dm * ds - (2.0 * r * r - 2.0) * ds * ds) / den};
}

PairAccel accel_tilde(double ratio_am_ap, double s, double dm, double ds) {
    guard_sigma(s);
    return {2.0 * dm * ds / s, -ratio_am_ap * dm * dm / s + ds * ds / s};
}

PairAccel accel_primed(double s, double dm, double ds) {
    guard_sigma(s);
    return {2.0 * dm * ds / s, -0.5 * dm * dm / s + ds * ds / s};
}

}  // namespace

Eigen::VectorXd rhs_original(const GeodesicState& state, const ModelParams& params) {
    check_state(state, params, Frame::original);
    Eigen::VectorXd acc(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto a = accel_original(params.r[k], state.pos[2 * k + 1], state.vel[2 * k],
                                      state.vel[2 * k + 1]);
        acc[2 * k] = a.mu;
        acc[2 * k + 1] = a.sigma;
    }
    return acc;
}

Eigen::VectorXd rhs_diagonalized(const GeodesicState& state, const ModelParams& params) {
    check_state(state, params, Frame::tilde);
    Eigen::VectorXd acc(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto d = manifold::diagonalize(params.r[k]);
        const auto a = accel_tilde(d.alpha_minus / d.alpha_plus, state.pos[2 * k + 1],
                                   state.vel[2 * k], state.vel[2 * k + 1]);
        acc[2 * k] = a.mu;
        acc[2 * k + 1] = a.sigma;
    }
    return acc;
}

Eigen::VectorXd rhs_primed(const GeodesicState& state, const ModelParams& params) {
    check_state(state, params, Frame::primed);
    Eigen::VectorXd acc(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto a = accel_primed(state.pos[2 * k + 1], state.vel[2 * k], state.vel[2 * k + 1]);
        acc[2 * k] = a.mu;
        acc[2 * k + 1] = a.sigma;
    }
    return acc;
}

std::pair<double, double> closed_form_original(double tau, const ModelParams& params, int k) {
    const auto d = manifold::diagonalize(params.r[k]);
    const double f = d.primed_scale();
    const double lam = params.lambda[k], xi = params.xi[k];
    const double c = xi * xi / (8.0 * lam * lam);
    const double u = std::exp(-2.0 * lam * tau) + c;
    const double bracket = (xi * xi / (2.0 * lam)) / u - 4.0 * lam;
    const double sp = xi * std::exp(-lam * tau) / u;
    return {f * bracket + sp, d.a0 * f * bracket + d.a1 * sp};
}

GeodesicState closed_form_state(const ModelParams& params, double tau, Frame frame) {
    GeodesicState st;
    st.frame = frame;
    st.pos.resize(2 * params.l());
    st.vel.resize(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto p = closed_form_primed(tau, params.xi[k], params.lambda[k]);
        Eigen::Vector2d pos(p.mu, p.sigma), vel(p.dmu, p.dsigma);
        if (frame != Frame::primed) {
            const auto d = manifold::diagonalize(params.r[k]);
            const double f = d.primed_scale();
            pos[0] *= f;
            vel[0] *= f;
            if (frame == Frame::original) {
                pos = (d.E * pos).eval();
                vel = (d.E * vel).eval();
            }
        }
        st.pos.segment<2>(2 * k) = pos;
        st.vel.segment<2>(2 * k) = vel;
    }
    return st;
}

std::pair<double, double> closed_form_residual(double tau, double xi, double lambda) {
    const auto p = closed_form_primed(tau, xi, lambda);
    // ODE defect of the primed system, evaluated without the sigma floor.
    const double rm = p.d2mu - 2.0 * p.dmu * p.dsigma / p.sigma;
    const double rs = p.d2sigma + 0.5 * p.dmu * p.dmu / p.sigma - p.dsigma * p.dsigma / p.sigma;
    return {rm, rs};
}

namespace {

numerics::Rhs pair_rhs(Frame frame, double r) {
    switch (frame) {
        case Frame::original:
            return [r](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
                const auto a = accel_original(r, y[1], y[2], y[3]);
                dy[0] = y[2];
                dy[1] = y[3];
                dy[2] = a.mu;
                dy[3] = a.sigma;
            };
        case Frame::tilde: {
            const auto d = manifold::diagonalize(r);
            const double ratio = d.alpha_minus / d.alpha_plus;
            return [ratio](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
                const auto a = accel_tilde(ratio, y[1], y[2], y[3]);
                dy[0] = y[2];
                dy[1] = y[3];
                dy[2] = a.mu;
                dy[3] = a.sigma;
            };
        }
        case Frame::primed:
            return [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
                const auto a = accel_primed(y[1], y[2], y[3]);
                dy[0] = y[2];
                dy[1] = y[3];
                dy[2] = a.mu;
                dy[3] = a.sigma;
            };
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Trajectory integrate_geodesic(const ModelParams& params, Frame frame, const GeodesicState& initial,
                              std::span<const double> tau_grid, const ToleranceSpec& tol) {
    params.validate();
    check_state(initial, params, frame);
    if (tau_grid.size() < 2)
        throw std::invalid_argument("integrate_geodesic: need at least two grid points");

    Trajectory traj;
    traj.params = params;
    traj.frame = frame;
    traj.tol = tol;
    traj.tau.assign(tau_grid.begin(), tau_grid.end());
    traj.pos.assign(tau_grid.size(), Eigen::VectorXd(2 * params.l()));
    traj.vel.assign(tau_grid.size(), Eigen::VectorXd(2 * params.l()));

    // Pairs are exactly decoupled blocks; integrate each on its own.
    for (int k = 0; k < params.l(); ++k) {
        Eigen::VectorXd y0(4);
        y0 << initial.pos[2 * k], initial.pos[2 * k + 1], initial.vel[2 * k],
            initial.vel[2 * k + 1];
        const auto sol = numerics::ode_solve_grid(pair_rhs(frame, params.r[k]), y0, tau_grid, tol);
        traj.accepted_steps += sol.accepted_steps;
        for (std::size_t i = 0; i < sol.tau.size(); ++i) {
            traj.pos[i].segment<2>(2 * k) = sol.states[i].segment<2>(0);
            traj.vel[i].segment<2>(2 * k) = sol.states[i].segment<2>(2);
        }
    }
    return traj;
}

Trajectory to_frame(const Trajectory& traj, Frame target, const ModelParams& params) {
    if (traj.frame == target) return traj;
    Trajectory out = traj;
    out.frame = target;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        Point p{traj.frame, traj.pos[i]};
        out.pos[i] = manifold::frame_transform(p, target, params).coords;
        // Velocities obey the same per-pair linear maps.
        Eigen::VectorXd v(2 * params.l());
        for (int k = 0; k < params.l(); ++k) {
            const auto d = manifold::diagonalize(params.r[k]);
            Eigen::Vector2d w = traj.vel[i].segment<2>(2 * k);
            switch (traj.frame) {
                case Frame::original: w = (d.E_inv * w).eval(); break;
                case Frame::primed: w[0] *= d.primed_scale(); break;
                case Frame::tilde: break;
            }
            switch (target) {
                case Frame::original: w = (d.E * w).eval(); break;
                case Frame::primed: w[0] /= d.primed_scale(); break;
                case Frame::tilde: break;
            }
            v.segment<2>(2 * k) = w;
        }
        out.vel[i] = v;
    }
    return out;
}

double min_abs_a1_over_a0() {
    const auto res = numerics::maximize_1d(
        [](double r) {
            const auto d = manifold::diagonalize(r);
            return -std::abs(d.a1 / d.a0);
        },
        1e-6, 1.0 - 1e-9, 1e-12);
    return -res.value;
}

HypothesisRatio hypothesis_ratio(const Trajectory& traj, const ModelParams& params, int pair) {
    if (pair < 0 || pair >= params.l()) throw std::invalid_argument("hypothesis_ratio: bad pair");
    const Trajectory t = to_frame(traj, Frame::tilde, params);
    HypothesisRatio hr;
    hr.tau = t.tau;
    hr.ratio.resize(t.tau.size());
    std::vector<double> abs_ratio(t.tau.size());
    for (std::size_t i = 0; i < t.tau.size(); ++i) {
        const double st = t.pos[i][2 * pair + 1];
        if (!(st > 0.0)) throw SingularityError("hypothesis_ratio: sigma-tilde must be > 0");
        hr.ratio[i] = t.pos[i][2 * pair] / st;
        abs_ratio[i] = std::abs(hr.ratio[i]);
    }
    hr.bound = min_abs_a1_over_a0();
    hr.final_abs_ratio = abs_ratio.back();

    // Rate fit over the later half of the span, where the decay is clean.
    const double lo = t.tau.front() + 0.5 * (t.tau.back() - t.tau.front());
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < t.tau.size(); ++i)
        if (t.tau[i] >= lo && abs_ratio[i] > 0.0) {
            tw.push_back(t.tau[i]);
            yw.push_back(abs_ratio[i]);
        }
    hr.fitted_rate = -numerics::fit_log_linear(tw, yw).exponent;
    hr.satisfied = hr.final_abs_ratio < 0.1 * hr.bound;
    return hr;
}

double metric_speed(const GeodesicState& state, const ModelParams& params) {
    double speed = 0.0;
    for (int k = 0; k < params.l(); ++k) {
        const double s = state.pos[2 * k + 1];
        guard_sigma(s);
        const double dm = state.vel[2 * k], ds = state.vel[2 * k + 1];
        switch (state.frame) {
            case Frame::original: {
                const Eigen::Matrix2d m = manifold::metric_block(params.r[k], s, true);
                const Eigen::Vector2d v(dm, ds);
                speed += v.dot(m * v);
                break;
            }
            case Frame::tilde: {
                const auto d = manifold::diagonalize(params.r[k]);
                const double a12 = d.a1 * d.a1;
                speed += (d.alpha_minus * dm * dm + d.alpha_plus * ds * ds) / (a12 * s * s);
                break;
            }
            case Frame::primed: {
                const auto d = manifold::diagonalize(params.r[k]);
                const double a12 = d.a1 * d.a1;
                speed += (d.alpha_plus / a12) * (0.5 * dm * dm + ds * ds) / (s * s);
                break;
            }
        }
    }
    return speed;
}

}  // namespace igeo::geodesics
