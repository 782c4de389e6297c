#include "igeo/jacobi.hpp"

#include <cmath>
#include <stdexcept>

#include "igeo/manifold.hpp"

namespace igeo::jacobi {

std::pair<double, double> asymptotic_components(double tau, const PairJacobiConstants& c,
                                                double lambda, SecondComponentForm form) {
    const double e1 = std::exp(-lambda * tau);
    const double e2 = std::exp(-2.0 * lambda * tau);
    const double first = c.c0 + c.c1 * e2;
    const double second =
        c.c2 * e1 + c.c3 * tau * (form == SecondComponentForm::reference ? e2 : e1);
    return {first, second};
}

LimitingSubstitutionFindings verify_limiting_forms(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("verify_limiting_forms: lambda must be > 0");
    LimitingSubstitutionFindings f{true, true, true, true, 0.0};
    const double l2 = lambda * lambda;
    for (int i = 0; i <= 100; ++i) {
        const double t = 10.0 * i / (100.0 * lambda);
        const double e1 = std::exp(-lambda * t), e2 = std::exp(-2.0 * lambda * t);

        // First equation: J'' + 2 lambda J' on C0 + C1 e^{-2 lt} (C0=C1=1).
        const double r1 = 4.0 * l2 * e2 + 2.0 * lambda * (-2.0 * lambda * e2);
        if (std::abs(r1) > 1e-12 * l2) f.const_plus_exp2_ok = false;

        // Second equation: J'' + 2 lambda J' + lambda^2 J on each candidate.
        const double ra = l2 * e1 + 2.0 * lambda * (-lambda * e1) + l2 * e1;
        if (std::abs(ra) > 1e-12 * l2) f.exp_lambda_ok = false;

        const double rb = e1 * (l2 * t - 2.0 * lambda) + 2.0 * lambda * e1 * (1.0 - lambda * t) +
                          l2 * t * e1;
        if (std::abs(rb) > 1e-12 * l2 * (1.0 + t)) f.tau_exp_lambda_ok = false;

        const double rc = e2 * (4.0 * l2 * t - 4.0 * lambda) +
                          2.0 * lambda * e2 * (1.0 - 2.0 * lambda * t) + l2 * t * e2;
        f.max_residual_tau_exp_two_lambda = std::max(f.max_residual_tau_exp_two_lambda, std::abs(rc));
        if (std::abs(rc) > 1e-12 * l2 * (1.0 + t)) f.tau_exp_two_lambda_ok = false;
    }
    return f;
}

namespace {

void check_jlc_sizes(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ, const ModelParams& p) {
    if (J.size() != 2 * p.l() || dJ.size() != 2 * p.l())
        throw std::invalid_argument("jlc rhs: component size mismatch");
}

struct TildePairGeometry {
    double s;            // sigma-tilde
    double dmu, dsigma;  // velocities
    double ddmu, ddsigma;
    double rho;  // alpha_- / alpha_+
};

TildePairGeometry pair_geometry(const geodesics::GeodesicState& st, const ModelParams& params,
                                int k) {
    if (st.frame != Frame::tilde) throw std::invalid_argument("jlc rhs: tilde-frame state required");
    TildePairGeometry g;
    g.s = st.pos[2 * k + 1];
    if (!(g.s > kSigmaFloor)) throw SingularityError("jlc rhs: sigma-tilde at the singular floor");
    g.dmu = st.vel[2 * k];
    g.dsigma = st.vel[2 * k + 1];
    const auto d = manifold::diagonalize(params.r[k]);
    g.rho = d.alpha_minus / d.alpha_plus;
    // Geodesic accelerations of the diagonalized system.
    g.ddmu = 2.0 * g.dmu * g.dsigma / g.s;
    g.ddsigma = -g.rho * g.dmu * g.dmu / g.s + g.dsigma * g.dsigma / g.s;
    return g;
}

}  // namespace

Eigen::VectorXd jlc_rhs_general(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ,
                                const geodesics::GeodesicState& tilde_state,
                                const ModelParams& params) {
    check_jlc_sizes(J, dJ, params);
    Eigen::VectorXd out(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto g = pair_geometry(tilde_state, params, k);
        const double s = g.s, s2 = s * s;

        double gam[2][2][2] = {};  // gam[a][i][j]
        gam[0][0][1] = gam[0][1][0] = -1.0 / s;
        gam[1][0][0] = g.rho / s;
        gam[1][1][1] = -1.0 / s;

        double dgam[2][2][2][2] = {};  // dgam[nu][a][i][j], nu = derivative index
        dgam[1][0][0][1] = dgam[1][0][1][0] = 1.0 / s2;
        dgam[1][1][0][0] = -g.rho / s2;
        dgam[1][1][1][1] = 1.0 / s2;

        // Mixed curvature components consistent with the covariant R_1212.
        double riem[2][2][2][2] = {};  // riem[a][n][m][l], contracted u^n J^m u^l
        riem[0][1][0][1] = -1.0 / s2;
        riem[0][1][1][0] = 1.0 / s2;
        riem[1][0][1][0] = -g.rho / s2;
        riem[1][0][0][1] = g.rho / s2;

        const double u[2] = {g.dmu, g.dsigma};
        const double a2[2] = {g.ddmu, g.ddsigma};
        const double jv[2] = {J[2 * k], J[2 * k + 1]};
        const double djv[2] = {dJ[2 * k], dJ[2 * k + 1]};

        for (int m = 0; m < 2; ++m) {
            double acc = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    acc += 2.0 * gam[m][a][b] * djv[a] * u[b];
                    acc += gam[m][a][b] * jv[a] * a2[b];
                    for (int nu = 0; nu < 2; ++nu) acc += dgam[nu][m][a][b] * u[nu] * u[b] * jv[a];
                    for (int rho = 0; rho < 2; ++rho)
                        for (int sg = 0; sg < 2; ++sg)
                            acc += gam[m][a][b] * gam[a][rho][sg] * u[sg] * u[b] * jv[rho];
                }
            double curv = 0.0;
            for (int n = 0; n < 2; ++n)
                for (int mm = 0; mm < 2; ++mm)
                    for (int ll = 0; ll < 2; ++ll) curv += riem[m][n][mm][ll] * u[n] * jv[mm] * u[ll];
            out[2 * k + m] = -(acc + curv);
        }
    }
    return out;
}

Eigen::VectorXd jlc_rhs_explicit_pair(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ,
                                      const geodesics::GeodesicState& tilde_state,
                                      const ModelParams& params) {
    check_jlc_sizes(J, dJ, params);
    Eigen::VectorXd out(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto g = pair_geometry(tilde_state, params, k);
        const double s = g.s, s2 = s * s;
        const double j1 = J[2 * k], j2 = J[2 * k + 1];
        const double dj1 = dJ[2 * k], dj2 = dJ[2 * k + 1];
        out[2 * k] = -(-2.0 / s * g.dsigma * dj1 - 2.0 / s * g.dmu * dj2 +
                       j1 * (-g.ddsigma / s + g.dsigma * g.dsigma / s2) +
                       j2 * (-g.ddmu / s + 3.0 * g.dmu * g.dsigma / s2));
        out[2 * k + 1] = -(2.0 * g.rho / s * g.dmu * dj1 - 2.0 / s * g.dsigma * dj2 +
                           j1 * (g.rho * g.ddmu / s - 2.0 * g.rho * g.dmu * g.dsigma / s2) +
                           j2 * (-g.ddsigma / s + 2.0 * g.dsigma * g.dsigma / s2 -
                                 2.0 * g.rho * g.dmu * g.dmu / s2));
    }
    return out;
}

Eigen::VectorXd jlc_rhs_reduced(const Eigen::VectorXd& J, const Eigen::VectorXd& dJ, double tau,
                                const ModelParams& params) {
    check_jlc_sizes(J, dJ, params);
    Eigen::VectorXd out(2 * params.l());
    for (int k = 0; k < params.l(); ++k) {
        const auto d = manifold::diagonalize(params.r[k]);
        const double f = d.primed_scale();
        const double lam = params.lambda[k], xi = params.xi[k];
        const double e1 = std::exp(-lam * tau);
        const double j2 = J[2 * k + 1];  // no J^{2k-1} term survives in the first equation
        const double dj1 = dJ[2 * k], dj2 = dJ[2 * k + 1];
        out[2 * k] = -2.0 * lam * dj1 + f * 16.0 * lam * lam / xi * e1 * dj2 +
                     f * 8.0 * lam * lam * lam / xi * e1 * j2;
        out[2 * k + 1] =
            -(1.0 / f) * 8.0 * lam * lam / xi * e1 * dj1 - 2.0 * lam * dj2 - lam * lam * j2;
    }
    return out;
}

namespace {

JacobiTrajectory integrate_jlc(const numerics::Rhs& rhs, const ModelParams& params,
                               std::span<const double> tau_grid, const Eigen::VectorXd& J0,
                               const Eigen::VectorXd& dJ0, const ToleranceSpec& tol) {
    const int n = 2 * params.l();
    Eigen::VectorXd y0(2 * n);
    y0.head(n) = J0;
    y0.tail(n) = dJ0;
    const auto sol = numerics::ode_solve_grid(rhs, y0, tau_grid, tol);
    JacobiTrajectory traj;
    traj.tau = sol.tau;
    for (const auto& y : sol.states) {
        traj.J.push_back(y.head(n));
        traj.dJ.push_back(y.tail(n));
    }
    return traj;
}

}  // namespace

JacobiTrajectory integrate_reduced(const ModelParams& params, std::span<const double> tau_grid,
                                   const Eigen::VectorXd& J0, const Eigen::VectorXd& dJ0,
                                   const ToleranceSpec& tol) {
    params.validate();
    check_jlc_sizes(J0, dJ0, params);
    const int n = 2 * params.l();
    auto rhs = [&params, n](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        dy.head(n) = y.tail(n);
        dy.tail(n) = jlc_rhs_reduced(y.head(n), y.tail(n), t, params);
    };
    return integrate_jlc(rhs, params, tau_grid, J0, dJ0, tol);
}

JacobiTrajectory integrate_general(const ModelParams& params, std::span<const double> tau_grid,
                                   const Eigen::VectorXd& J0, const Eigen::VectorXd& dJ0,
                                   const ToleranceSpec& tol) {
    params.validate();
    check_jlc_sizes(J0, dJ0, params);
    const int n = 2 * params.l();
    auto rhs = [&params, n](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        const auto geod = geodesics::closed_form_state(params, t, Frame::tilde);
        dy.head(n) = y.tail(n);
        dy.tail(n) = jlc_rhs_general(y.head(n), y.tail(n), geod, params);
    };
    return integrate_jlc(rhs, params, tau_grid, J0, dJ0, tol);
}

JacobiConstants extract_constants(const JacobiTrajectory& traj, const ModelParams& params,
                                  double window_lo, double window_hi, SecondComponentForm form) {
    JacobiConstants out(params.l());
    for (int k = 0; k < params.l(); ++k) {
        const double lam = params.lambda[k];
        std::vector<double> ts;
        std::vector<double> j1s, j2s;
        for (std::size_t i = 0; i < traj.tau.size(); ++i) {
            const double lt = traj.tau[i] * lam;
            if (lt >= window_lo && lt <= window_hi) {
                ts.push_back(traj.tau[i]);
                j1s.push_back(traj.J[i][2 * k]);
                j2s.push_back(traj.J[i][2 * k + 1]);
            }
        }
        if (ts.size() < 4)
            throw std::invalid_argument("extract_constants: extraction window not covered");
        const auto m = static_cast<Eigen::Index>(ts.size());
        Eigen::MatrixXd M1(m, 2), M2(m, 2);
        Eigen::VectorXd b1(m), b2(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double t = ts[i];
            M1(i, 0) = 1.0;
            M1(i, 1) = std::exp(-2.0 * lam * t);
            M2(i, 0) = std::exp(-lam * t);
            M2(i, 1) =
                t * (form == SecondComponentForm::reference ? std::exp(-2.0 * lam * t)
                                                          : std::exp(-lam * t));
            b1[i] = j1s[i];
            b2[i] = j2s[i];
        }
        const Eigen::Vector2d c1 = M1.colPivHouseholderQr().solve(b1);
        const Eigen::Vector2d c2 = M2.colPivHouseholderQr().solve(b2);
        out[k] = {c1[0], c1[1], c2[0], c2[1]};
    }
    return out;
}

double intensity_tilde_exact(const Eigen::VectorXd& J, const Eigen::VectorXd& sigma_tilde,
                             const ModelParams& params) {
    if (J.size() != 2 * params.l() || sigma_tilde.size() != params.l())
        throw std::invalid_argument("intensity_tilde_exact: size mismatch");
    double sum = 0.0;
    for (int k = 0; k < params.l(); ++k) {
        const double st = sigma_tilde[k];
        if (!(st > 0.0)) throw SingularityError("intensity_tilde_exact: sigma-tilde must be > 0");
        const auto d = manifold::diagonalize(params.r[k]);
        const double a12 = d.a1 * d.a1;
        const double j1 = J[2 * k], j2 = J[2 * k + 1];
        sum += (d.alpha_minus * j1 * j1 + d.alpha_plus * j2 * j2) / (a12 * st * st);
    }
    return sum;
}

double elementary_j2(double tau, double c0, double xi, double lambda) {
    const double amp = c0 * xi / (8.0 * lambda * lambda);
    return amp * amp * std::exp(2.0 * lambda * tau);
}

double intensity_tilde_asymptotic(double tau, const JacobiConstants& c, const ModelParams& params) {
    if (static_cast<int>(c.size()) != params.l())
        throw std::invalid_argument("intensity_tilde_asymptotic: constants size mismatch");
    double sum = 0.0;
    for (int k = 0; k < params.l(); ++k)
        sum += attenuation_tilde(params.r[k]) *
               elementary_j2(tau, c[k].c0, params.xi[k], params.lambda[k]);
    return sum;
}

std::pair<double, double> components_original(double jt1, double jt2, double r) {
    const auto d = manifold::diagonalize(r);
    return {jt1 + jt2, d.a0 * jt1 + d.a1 * jt2};
}

double intensity_original_exact(const Eigen::VectorXd& J_original,
                                const Eigen::VectorXd& sigma_original, const ModelParams& params) {
    if (J_original.size() != 2 * params.l() || sigma_original.size() != params.l())
        throw std::invalid_argument("intensity_original_exact: size mismatch");
    double sum = 0.0;
    for (int k = 0; k < params.l(); ++k) {
        const double s = sigma_original[k];
        if (!(s > 0.0)) throw SingularityError("intensity_original_exact: sigma must be > 0");
        const double j1 = J_original[2 * k], j2 = J_original[2 * k + 1];
        sum += (j1 * j1 + 2.0 * params.r[k] * j1 * j2 + 2.0 * j2 * j2) / (s * s);
    }
    return sum;
}

double intensity_original_asymptotic(double tau, const JacobiConstants& c,
                                     const ModelParams& params) {
    if (static_cast<int>(c.size()) != params.l())
        throw std::invalid_argument("intensity_original_asymptotic: constants size mismatch");
    double sum = 0.0;
    for (int k = 0; k < params.l(); ++k)
        sum += attenuation_original_reference(params.r[k]) *
               elementary_j2(tau, c[k].c0, params.xi[k], params.lambda[k]);
    return sum;
}

double larger_model_intensity(double tau, const Eigen::VectorXd& lambdas, const Eigen::VectorXd& c0,
                              const Eigen::VectorXd& xi) {
    if (lambdas.size() != c0.size() || lambdas.size() != xi.size())
        throw std::invalid_argument("larger_model_intensity: size mismatch");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < lambdas.size(); ++k)
        sum += elementary_j2(tau, c0[k], xi[k], lambdas[k]);
    return sum;
}

double attenuation_tilde(double r) {
    const auto d = manifold::diagonalize(r);
    return d.alpha_minus / (d.a1 * d.a1);
}

double attenuation_tilde_reference(double r) {
    const double sd = std::sqrt(1.0 + 4.0 * r * r);
    return 2.0 * r * (3.0 - sd) / ((1.0 + sd) * (1.0 + sd));
}

double attenuation_original_reference(double r) {
    const auto d = manifold::diagonalize(r);
    const double bracket = 1.0 + 2.0 * r * d.a0 + d.a0 * d.a0;
    const double den = (1.0 + d.a1) * (1.0 + d.a1);
    return 4.0 * r * r * bracket / den;
}

double attenuation_original_alt(double r) {
    const auto d = manifold::diagonalize(r);
    const double bracket = 1.0 + 2.0 * r * d.a0 + 2.0 * d.a0 * d.a0;
    return bracket / (d.a1 * d.a1);
}

AttenuationReport attenuation_report(std::span<const double> r_grid) {
    AttenuationReport rep;
    rep.r.assign(r_grid.begin(), r_grid.end());
    rep.all_below_one = true;
    for (double r : rep.r) {
        rep.tilde_definitional.push_back(attenuation_tilde(r));
        rep.tilde_reference.push_back(attenuation_tilde_reference(r));
        rep.original_reference.push_back(attenuation_original_reference(r));
        rep.original_alt.push_back(attenuation_original_alt(r));
        rep.ratio_reference.push_back(std::sqrt(std::max(0.0, rep.original_reference.back())));
        rep.ratio_alt.push_back(std::sqrt(std::max(0.0, rep.original_alt.back())));
        if (rep.tilde_definitional.back() >= 1.0 || rep.tilde_reference.back() >= 1.0 ||
            rep.original_reference.back() >= 1.0 || rep.original_alt.back() >= 1.0)
            rep.all_below_one = false;
    }

    constexpr double lo = 1e-6, hi = 1.0 - 1e-9;
    auto polish = [&](double (*f)(double)) {
        const auto m = numerics::maximize_1d([f](double r) { return f(r); }, lo, hi, 1e-10);
        return AttenuationExtremum{m.argmax, m.value};
    };
    rep.tilde_definitional_max = polish(&attenuation_tilde);
    rep.tilde_reference_max = polish(&attenuation_tilde_reference);
    rep.original_reference_max = polish(&attenuation_original_reference);
    rep.original_alt_max = polish(&attenuation_original_alt);

    rep.sup_sqrt_ratio_reference = std::sqrt(rep.original_reference_max.max);
    rep.sup_sqrt_ratio_alt = std::sqrt(rep.original_alt_max.max);

    const double stated_argmax = std::sqrt(2.0 - std::sqrt(2.0));
    const double stated_max = 3.0 - 2.0 * std::sqrt(2.0);
    rep.tilde_matches_stated_max =
        std::abs(rep.tilde_definitional_max.argmax - stated_argmax) <= 1e-6 &&
        std::abs(rep.tilde_definitional_max.max - stated_max) <= 1e-10;
    rep.reference_ratio_below_04 = rep.sup_sqrt_ratio_reference <= 0.4;
    rep.alt_ratio_below_04 = rep.sup_sqrt_ratio_alt <= 0.4;
    rep.original_max_matches_015 = std::abs(rep.original_reference_max.max - 0.15) <= 0.01 ||
                                   std::abs(rep.original_alt_max.max - 0.15) <= 0.01;
    rep.original_argmax_matches_065 = std::abs(rep.original_reference_max.argmax - 0.65) <= 0.01 ||
                                      std::abs(rep.original_alt_max.argmax - 0.65) <= 0.01;
    return rep;
}

}  // namespace igeo::jacobi
