#include "igeo/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "igeo/cli_config.hpp"
#include "igeo/complexity.hpp"
#include "igeo/embedding.hpp"
#include "igeo/fd_geometry.hpp"
#include "igeo/geodesics.hpp"
#include "igeo/jacobi.hpp"
#include "igeo/manifold.hpp"
#include "igeo/report.hpp"

namespace igeo::acceptance {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

fdgeom::MetricFn full_block_metric(const Eigen::VectorXd& r) {
    return [r](const Eigen::VectorXd& x) {
        const auto l = r.size();
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * l, 2 * l);
        for (Eigen::Index k = 0; k < l; ++k)
            g.block<2, 2>(2 * k, 2 * k) = manifold::metric_block(r[k], x[2 * k + 1], true);
        return g;
    };
}

fdgeom::MetricFn qq_metric(double r) {
    const auto d = manifold::diagonalize(r);
    const double k1 = d.alpha_minus / (d.a1 * d.a1);
    const double k2 = d.alpha_plus / (d.a1 * d.a1);
    return [k1, k2](const Eigen::VectorXd& x) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
        const double s2 = x[1] * x[1];
        g(0, 0) = k1 / s2;
        g(1, 1) = k2 / s2;
        return g;
    };
}

CriterionResult criterion_1() {
    CriterionResult res{1, "curvature limit and finite-difference Ricci oracle", true, ""};
    double worst_limit = 0.0;
    for (int l : {1, 2, 5}) {
        const double R = manifold::scalar_curvature(Eigen::VectorXd::Constant(l, 1e-6));
        worst_limit = std::max(worst_limit, std::abs(R + l));
    }
    if (worst_limit > 1e-5) res.passed = false;

    double worst_rel = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        Eigen::VectorXd rv = Eigen::VectorXd::Constant(1, r);
        Eigen::VectorXd x(2);
        x << 0.4, 1.3;
        const double Rfd = fdgeom::ricci_scalar_fd(full_block_metric(rv), x, 1e-4);
        const double Rcl = manifold::scalar_curvature(rv);
        worst_rel = std::max(worst_rel, std::abs(Rfd - Rcl) / std::abs(Rcl));
    }
    {
        Eigen::VectorXd rv(2);
        rv << 0.5, 0.5;
        Eigen::VectorXd x(4);
        x << 0.4, 1.0, -0.2, 2.0;
        const double Rfd = fdgeom::ricci_scalar_fd(full_block_metric(rv), x, 1e-4);
        const double Rcl = manifold::scalar_curvature(rv);
        worst_rel = std::max(worst_rel, std::abs(Rfd - Rcl) / std::abs(Rcl));
    }
    if (worst_rel > 1e-5) res.passed = false;
    res.details = fmt("limit err %.2e (tol 1e-5), FD-Ricci rel err %.2e (tol 1e-5)", worst_limit,
                      worst_rel);
    return res;
}

CriterionResult criterion_2() {
    CriterionResult res{2, "Christoffel and Riemann fidelity on the asymptotic metric", true, ""};
    double worst = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto metric = qq_metric(r);
        for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            Eigen::VectorXd x(2);
            x << 0.0, s;
            const auto gam = fdgeom::christoffels_fd(metric, x, 1e-5 * std::max(1.0, s));
            const auto sym = manifold::christoffels_asymptotic(r, s);
            worst = std::max(worst, std::abs(gam[0](0, 1) - sym.g112) / std::abs(sym.g112));
            worst = std::max(worst, std::abs(gam[1](0, 0) - sym.g211) / std::abs(sym.g211));
            worst = std::max(worst, std::abs(gam[1](1, 1) - sym.g222) / std::abs(sym.g222));

            const auto R = fdgeom::riemann_covariant_fd(metric, x, 1e-4 * std::max(1.0, s));
            const double r1212 = R[((0 * 2 + 1) * 2 + 0) * 2 + 1];
            const double expected = manifold::riemann_1212_covariant(r, s);
            worst = std::max(worst, std::abs(r1212 - expected) / std::abs(expected));
        }
    }
    res.passed = worst <= 1e-6;
    res.details = fmt("worst relative error %.2e (tol 1e-6) over the 5x5 grid", worst);
    return res;
}

CriterionResult criterion_3() {
    CriterionResult res{3, "closed-form geodesics: residual and numeric reproduction", true, ""};
    double worst_res = 0.0;
    for (double xi : {1.0, 8.0})
        for (double lam : {0.5, 1.0, 2.0})
            for (int i = 0; i <= 200; ++i) {
                const double tau = 20.0 * i / 200.0;
                const auto [rm, rs] = geodesics::closed_form_residual(tau, xi, lam);
                worst_res = std::max(worst_res, std::max(std::abs(rm), std::abs(rs)));
            }
    if (worst_res > 1e-9) res.passed = false;

    double worst_int = 0.0;
    const auto grid = numerics::linspace(0.0, 10.0, 101);
    for (double xi : {1.0, 8.0})
        for (double lam : {0.5, 1.0, 2.0}) {
            ModelParams p = ModelParams::uniform(1, 0.5, lam, xi);
            const auto init = geodesics::closed_form_state(p, 0.0, Frame::primed);
            const auto traj = geodesics::integrate_geodesic(p, Frame::primed, init, grid);
            double scale_mu = 0.0, scale_s = 0.0, err_mu = 0.0, err_s = 0.0;
            for (std::size_t i = 0; i < traj.tau.size(); ++i) {
                const auto cf = geodesics::closed_form_primed(traj.tau[i], xi, lam);
                scale_mu = std::max(scale_mu, std::abs(cf.mu));
                scale_s = std::max(scale_s, std::abs(cf.sigma));
                err_mu = std::max(err_mu, std::abs(traj.pos[i][0] - cf.mu));
                err_s = std::max(err_s, std::abs(traj.pos[i][1] - cf.sigma));
            }
            worst_int = std::max(worst_int, std::max(err_mu / scale_mu, err_s / scale_s));
        }
    if (worst_int > 1e-6) res.passed = false;
    res.details = fmt("max residual %.2e (tol 1e-9), max scale-relative error %.2e (tol 1e-6)",
                      worst_res, worst_int);
    return res;
}

CriterionResult criterion_4() {
    CriterionResult res{4, "working hypothesis: a1/a0 bound and ratio decay rate", true, ""};
    const double computed = geodesics::min_abs_a1_over_a0();
    const double exact = (1.0 + std::sqrt(5.0)) / (std::sqrt(5.0) - 1.0);
    if (std::abs(computed - exact) > 1e-3) res.passed = false;
    if (std::abs(computed - 2.6) > 0.05) res.passed = false;

    double worst_rate = 0.0;
    struct Case {
        double r, lam, xi;
    };
    for (const Case c : {Case{0.5, 1.0, 8.0}, Case{0.7, 2.0, 1.0}}) {
        ModelParams p = ModelParams::uniform(1, c.r, c.lam, c.xi);
        geodesics::Trajectory traj;
        traj.params = p;
        traj.frame = Frame::tilde;
        for (double t : numerics::linspace(2.0 / c.lam, 12.0 / c.lam, 101)) {
            const auto st = geodesics::closed_form_state(p, t, Frame::tilde);
            traj.tau.push_back(t);
            traj.pos.push_back(st.pos);
            traj.vel.push_back(st.vel);
        }
        const auto hr = geodesics::hypothesis_ratio(traj, p, 0);
        worst_rate = std::max(worst_rate, std::abs(hr.fitted_rate - c.lam) / c.lam);
        if (!hr.satisfied) res.passed = false;
    }
    if (worst_rate > 0.02) res.passed = false;
    res.details = fmt("min|a1/a0| = %.6f (stated 2.6 within 0.05), rate error %.2e (tol 0.02)",
                      computed, worst_rate);
    return res;
}

CriterionResult criterion_5() {
    CriterionResult res{5, "volume saturation and power-law decay exponent", true, ""};
    double worst_sat = 0.0, worst_exp = 0.0;
    for (int l : {1, 3}) {
        ModelParams p = ModelParams::uniform(l, 0.5, 1.0, 1.0);
        const double sat = complexity::saturation(p);
        worst_sat = std::max(worst_sat, std::abs(complexity::volume_numeric(1e5, p) - sat));
        worst_sat = std::max(worst_sat, std::abs(complexity::volume_closed_form(1e5, p) - sat));

        const auto taus = numerics::logspace(1e2, 1e4, 17);
        std::vector<double> vs;
        for (double t : taus) vs.push_back(complexity::volume_numeric(t, p));
        const auto fit = complexity::decay_analysis(taus, vs, sat, 1e2, 1e4);
        worst_exp = std::max(worst_exp, std::abs(fit.exponent + 1.0));
    }
    res.passed = worst_sat <= 1e-4 && worst_exp <= 0.05;
    res.details = fmt("saturation gap %.2e (tol 1e-4), |exponent+1| = %.3f (tol 0.05)", worst_sat,
                      worst_exp);
    return res;
}

CriterionResult criterion_6() {
    CriterionResult res{6, "closed-form vs numeric volume: dropped constant stays bounded", true,
                        ""};
    double worst_slope = 0.0, worst_excess = 0.0;
    for (double r : {0.3, 0.5, 0.8}) {
        ModelParams p = ModelParams::uniform(1, r, 1.0, 8.0);
        const auto taus = numerics::logspace(1e2, 1e5, 13);
        std::vector<double> m;
        for (double t : taus)
            m.push_back(t * std::abs(complexity::volume_closed_form(t, p) -
                                     complexity::volume_numeric(t, p)));
        const auto fit = numerics::fit_exponent(taus, m);
        worst_slope = std::max(worst_slope, std::abs(fit.exponent));

        // Expected limit of tau*|difference|: the lower-limit constant of the
        // antiderivative, sqrt(2-r^2) * (1/a1 - 1/a0) * ln(1 + Sigma) / lambda.
        const auto d = manifold::diagonalize(r);
        const double Sigma = complexity::sigma_fn(r, 1.0, 8.0);
        const double bound =
            std::sqrt(2.0 - r * r) * (1.0 / d.a1 - 1.0 / d.a0) * std::log1p(Sigma);
        for (double mi : m) worst_excess = std::max(worst_excess, mi - 1.1 * bound - 1e-6);
    }
    res.passed = worst_slope <= 0.05 && worst_excess <= 0.0;
    res.details = fmt("|slope of tau*diff| = %.3f (tol 0.05), bound excess %.2e (tol 0)",
                      worst_slope, worst_excess);
    return res;
}

CriterionResult criterion_7() {
    CriterionResult res{7, "tilde attenuation maximum matches the stated constants", true, ""};
    const auto m = numerics::maximize_1d([](double r) { return jacobi::attenuation_tilde(r); },
                                         1e-6, 1.0 - 1e-9, 1e-10);
    const double argmax_exact = std::sqrt(2.0 - std::sqrt(2.0));
    const double max_exact = 3.0 - 2.0 * std::sqrt(2.0);
    const double e_arg = std::abs(m.argmax - argmax_exact);
    const double e_max = std::abs(m.value - max_exact);
    const bool rounded_ok = std::abs(std::round(m.argmax * 100.0) / 100.0 - 0.77) < 1e-12 &&
                            std::abs(std::round(m.value * 100.0) / 100.0 - 0.17) < 1e-12;
    res.passed = e_arg <= 1e-6 && e_max <= 1e-10 && rounded_ok;
    res.details = fmt("argmax err %.2e (tol 1e-6), max err %.2e (tol 1e-10), 2dp 0.77/0.17 ",
                      e_arg, e_max) +
                  std::string(rounded_ok ? "ok" : "FAIL");
    return res;
}

CriterionResult criterion_8() {
    CriterionResult res{8, "Jacobi growth rate and convergence to the asymptotic family", true,
                        ""};
    const auto grid = numerics::linspace(0.0, 22.0, 441);

    // Single pair.
    ModelParams p1 = ModelParams::uniform(1, 0.5, 1.0, 8.0);
    Eigen::VectorXd J0 = Eigen::VectorXd::Ones(2), dJ0 = Eigen::VectorXd::Zero(2);
    const auto traj = jacobi::integrate_reduced(p1, grid, J0, dJ0);
    const auto consts = jacobi::extract_constants(traj, p1, 8.0, 12.0,
                                                  jacobi::SecondComponentForm::verified);

    double worst_dev = 0.0;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        const double lt = traj.tau[i] * p1.lambda[0];
        if (lt < 15.0 || lt > 20.0) continue;
        const auto [m1, m2] = jacobi::asymptotic_components(traj.tau[i], consts[0], p1.lambda[0],
                                                            jacobi::SecondComponentForm::verified);
        worst_dev = std::max(worst_dev, std::abs(traj.J[i][0] - m1) / std::abs(m1));
        worst_dev = std::max(worst_dev, std::abs(traj.J[i][1] - m2) / std::abs(m2));
    }
    if (worst_dev > 0.01) res.passed = false;

    // Intensity slopes in both frames over tau in [15, 20].
    std::vector<double> ts, it_tilde, it_orig;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        const double t = traj.tau[i];
        if (t < 15.0 || t > 20.0) continue;
        const auto cf = geodesics::closed_form_primed(t, p1.xi[0], p1.lambda[0]);
        Eigen::VectorXd st(1);
        st << cf.sigma;  // sigma-tilde = sigma-primed
        ts.push_back(t);
        it_tilde.push_back(jacobi::intensity_tilde_exact(traj.J[i], st, p1));
        const auto [o1, o2] = jacobi::components_original(traj.J[i][0], traj.J[i][1], p1.r[0]);
        Eigen::VectorXd jo(2), so(1);
        jo << o1, o2;
        so << geodesics::closed_form_original(t, p1, 0).second;
        it_orig.push_back(jacobi::intensity_original_exact(jo, so, p1));
    }
    const double slope_t = numerics::fit_log_linear(ts, it_tilde).exponent;
    const double slope_o = numerics::fit_log_linear(ts, it_orig).exponent;
    double worst_slope = std::max(std::abs(slope_t - 2.0), std::abs(slope_o - 2.0)) / 2.0;

    // Two pairs, distinct rates: growth follows 2 max lambda.
    ModelParams p2;
    p2.r = Eigen::VectorXd::Constant(2, 0.5);
    p2.lambda = Eigen::VectorXd(2);
    p2.lambda << 0.5, 1.0;
    p2.xi = Eigen::VectorXd::Constant(2, 8.0);
    Eigen::VectorXd J02 = Eigen::VectorXd::Ones(4), dJ02 = Eigen::VectorXd::Zero(4);
    const auto traj2 = jacobi::integrate_reduced(p2, grid, J02, dJ02);
    std::vector<double> ts2, it2;
    for (std::size_t i = 0; i < traj2.tau.size(); ++i) {
        const double t = traj2.tau[i];
        if (t < 15.0 || t > 20.0) continue;
        Eigen::VectorXd st(2);
        st << geodesics::closed_form_primed(t, p2.xi[0], p2.lambda[0]).sigma,
            geodesics::closed_form_primed(t, p2.xi[1], p2.lambda[1]).sigma;
        ts2.push_back(t);
        it2.push_back(jacobi::intensity_tilde_exact(traj2.J[i], st, p2));
    }
    const double slope2 = numerics::fit_log_linear(ts2, it2).exponent;
    worst_slope = std::max(worst_slope, std::abs(slope2 - 2.0) / 2.0);
    if (worst_slope > 0.02) res.passed = false;

    // The reference tau e^{-2 lambda tau} term must be flagged by substitution.
    const auto findings = jacobi::verify_limiting_forms(1.0);
    const bool finding_ok = findings.const_plus_exp2_ok && findings.exp_lambda_ok &&
                            findings.tau_exp_lambda_ok && !findings.tau_exp_two_lambda_ok;
    if (!finding_ok) res.passed = false;

    res.details = fmt("model deviation %.2e (tol 0.01), slope err %.2e (tol 0.02); ", worst_dev,
                      worst_slope) +
                  "second-component basis verified as tau*exp(-lambda tau)";
    return res;
}

CriterionResult criterion_9() {
    CriterionResult res{9, "attenuation ratio report with both bracket variants", true, ""};
    const auto grid = numerics::linspace(0.005, 0.995, 199);
    const auto rep = jacobi::attenuation_report(grid);

    bool ok = rep.all_below_one && rep.tilde_matches_stated_max;
    ok = ok && std::isfinite(rep.sup_sqrt_ratio_reference) && std::isfinite(rep.sup_sqrt_ratio_alt);
    ok = ok && rep.r.size() == rep.ratio_reference.size() && rep.r.size() == rep.ratio_alt.size();
    // The report must carry the comparison flags; their truth values are the
    // finding, not a requirement.
    res.passed = ok;
    res.details = fmt("sup sqrt(A): reference %.4f (<=0.4: ", rep.sup_sqrt_ratio_reference) +
                  std::string(rep.reference_ratio_below_04 ? "yes" : "no") + "), " +
                  fmt("alternate %.4f (<=0.4: ", rep.sup_sqrt_ratio_alt) +
                  std::string(rep.alt_ratio_below_04 ? "yes" : "no") + "); " +
                  fmt("A max %.4f at r=%.3f vs stated 0.15 at 0.65: ",
                      rep.original_reference_max.max, rep.original_reference_max.argmax) +
                  std::string(rep.original_max_matches_015 && rep.original_argmax_matches_065
                                  ? "matches"
                                  : "discrepancy surfaced");
    return res;
}

CriterionResult criterion_10() {
    CriterionResult res{10, "embedding pipeline: linear correlation, pullback, zero cases", true,
                        ""};
    const double e_lin =
        std::abs(embedding::correlation_from_linear(1.0, 2.0) - 1.0 / std::sqrt(2.0));
    if (e_lin > 1e-12) res.passed = false;

    const auto spec = embedding::EmbeddingSpec::linear(1.0, 2.0);
    const auto rep = embedding::pullback_metric_oracle(spec, 0.7, 1.3, 1e-4);
    const double e_pull = std::abs(rep.r - 1.0 / std::sqrt(2.0));
    if (e_pull > 1e-6) res.passed = false;

    // O(h^2) convergence on a genuinely nonlinear constraint.
    embedding::EmbeddingSpec nonlinear;
    nonlinear.constraint = [](double mu1, double sigma1) {
        return std::sin(mu1) * std::cosh(sigma1);
    };
    const double p_exact = std::cos(0.8) * std::cosh(1.1);
    const double q_exact = std::sin(0.8) * std::sinh(1.1);
    const double r_exact = embedding::correlation_from_partials(p_exact, q_exact);
    const double err_h = std::abs(embedding::pullback_metric_oracle(nonlinear, 0.8, 1.1, 1e-3).r -
                                  r_exact);
    const double err_h2 = std::abs(embedding::pullback_metric_oracle(nonlinear, 0.8, 1.1, 5e-4).r -
                                   r_exact);
    const double order = err_h / std::max(err_h2, 1e-300);
    if (order < 3.0) res.passed = false;

    const bool zero_ok = embedding::correlation_from_partials(5.0, 0.0) == 0.0 &&
                         embedding::correlation_from_partials(0.0, 5.0) == 0.0;
    if (!zero_ok) res.passed = false;
    res.details = fmt("linear err %.2e (tol 1e-12), pullback err %.2e (tol 1e-6), h-ratio %.2f",
                      e_lin, e_pull, order);
    return res;
}

CriterionResult criterion_11() {
    CriterionResult res{11, "deterministic serialization and schema round-trip", true, ""};
    cli::RunConfig cfg;
    const auto echo1 = cfg.to_json();
    const auto echo2 = cli::RunConfig::from_json(echo1).to_json();
    if (report::dump_json(echo1) != report::dump_json(echo2)) res.passed = false;

    auto build = [&]() {
        nlohmann::json payload;
        payload["scalar_curvature"] = manifold::scalar_curvature(cfg.params.r);
        payload["lambda1"] = complexity::lambda1(cfg.params.r[0]);
        return report::dump_json(report::make_envelope("curvature", cfg.to_json(), payload));
    };
    const std::string a = build(), b = build();
    if (a != b) res.passed = false;

    auto csv = [&]() {
        report::CsvWriter w({"tau", "value"});
        for (double t : numerics::linspace(1.0, 2.0, 5))
            w.add_row({t, complexity::volume_closed_form(t, cfg.params)});
        return w.str();
    };
    const std::string c1 = csv(), c2 = csv();
    if (c1 != c2) res.passed = false;
    if (c1.substr(0, c1.find('\n')) != "tau,value") res.passed = false;

    const auto env = nlohmann::json::parse(a);
    const bool schema_ok = env.contains("schema_version") && env.contains("command") &&
                           env.contains("config") && env.contains("payload") &&
                           env.contains("provenance");
    if (!schema_ok) res.passed = false;
    res.details = std::string("envelope/CSV byte-identical: ") +
                  ((a == b && c1 == c2) ? "yes" : "no") + ", schema fields present: " +
                  (schema_ok ? "yes" : "no");
    return res;
}

}  // namespace

std::vector<CriterionResult> run_all() {
    return {criterion_1(), criterion_2(), criterion_3(), criterion_4(),  criterion_5(),
            criterion_6(), criterion_7(), criterion_8(), criterion_9(),  criterion_10(),
            criterion_11()};
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

std::string to_table(const std::vector<CriterionResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += r.passed ? "PASS" : "FAIL";
        out += "  ";
        out += std::to_string(r.id);
        if (r.id < 10) out += ' ';
        out += "  " + r.name + "  [" + r.details + "]\n";
    }
    out += all_passed(results) ? "all criteria passed\n" : "SOME CRITERIA FAILED\n";
    return out;
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    return {{"criteria", arr}, {"all_passed", all_passed(results)}};
}

}  // namespace igeo::acceptance
