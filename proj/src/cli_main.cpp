#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "igeo/acceptance.hpp"
#include "igeo/cli_config.hpp"
#include "igeo/complexity.hpp"
#include "igeo/embedding.hpp"
#include "igeo/geodesics.hpp"
#include "igeo/jacobi.hpp"
#include "igeo/manifold.hpp"
#include "igeo/report.hpp"

namespace igeo::cli {
namespace {

using Summary = std::vector<std::pair<std::string, double>>;

struct CommandOutput {
    std::string csv;
    std::string secondary_csv;
    std::string secondary_suffix;
    nlohmann::json payload;
    Summary summary;
    std::optional<double> abort_tau;  // set on singularity abort
};

nlohmann::json fit_to_json(const FitResult& f) {
    return {{"exponent", f.exponent}, {"intercept", f.intercept}, {"residual_rms", f.residual_rms}};
}

CommandOutput run_curvature(const RunConfig& cfg) {
    CommandOutput out;
    const auto& p = cfg.params;
    const double scalar = manifold::scalar_curvature(p.r);

    report::CsvWriter w({"pair", "r", "sigma_tilde", "gamma_1_12", "gamma_2_11", "gamma_2_22",
                         "riemann_1212_covariant", "riemann_1212_reference", "scalar_curvature"});
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k < p.l(); ++k)
        for (double s : cfg.sigma_grid) {
            const auto c = manifold::christoffels_asymptotic(p.r[k], s);
            const double rc = manifold::riemann_1212_covariant(p.r[k], s);
            const double rp = manifold::riemann_1212_reference(p.r[k], s);
            w.add_row({static_cast<double>(k + 1), p.r[k], s, c.g112, c.g211, c.g222, rc, rp,
                       scalar});
            rows.push_back({{"pair", k + 1},
                            {"r", p.r[k]},
                            {"sigma_tilde", s},
                            {"gamma_1_12", c.g112},
                            {"gamma_2_11", c.g211},
                            {"gamma_2_22", c.g222},
                            {"riemann_1212_covariant", rc},
                            {"riemann_1212_reference", rp}});
        }
    out.csv = w.str();
    out.payload["scalar_curvature"] = scalar;
    out.payload["samples"] = rows;
    out.payload["note"] =
        "riemann_1212_reference equals the covariant component only at sigma_tilde = 1";
    out.summary = {{"scalar_curvature", scalar}};
    return out;
}

CommandOutput run_geodesic(const RunConfig& cfg) {
    CommandOutput out;
    const auto& p = cfg.params;
    auto grid = cfg.resolved_tau_grid("geodesic").values();

    const auto initial = geodesics::closed_form_state(p, grid.front(), Frame::primed);
    geodesics::Trajectory traj;
    try {
        traj = geodesics::integrate_geodesic(p, Frame::primed, initial, grid, cfg.tol);
    } catch (const SingularityError&) {
        // Retreat to the longest prefix that integrates cleanly and report it.
        std::size_t n = grid.size() - 1;
        for (; n >= 2; --n) {
            try {
                std::vector<double> sub(grid.begin(), grid.begin() + n);
                traj = geodesics::integrate_geodesic(p, Frame::primed, initial, sub, cfg.tol);
                break;
            } catch (const SingularityError&) {
            }
        }
        if (traj.tau.empty()) throw;
        out.abort_tau = traj.tau.back();
    }
    const auto tilde = geodesics::to_frame(traj, Frame::tilde, p);
    const auto original = geodesics::to_frame(traj, Frame::original, p);

    std::vector<std::string> header{"tau"};
    for (int k = 1; k <= p.l(); ++k)
        for (const char* name : {"mu_prime", "sigma_prime", "mu", "sigma", "res_mu", "res_sigma",
                                 "ratio"})
            header.push_back(std::string(name) + "_" + std::to_string(k));
    report::CsvWriter w(header);

    double max_res = 0.0;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        const double t = traj.tau[i];
        std::vector<double> row{t};
        for (int k = 0; k < p.l(); ++k) {
            const auto cf = geodesics::closed_form_primed(t, p.xi[k], p.lambda[k]);
            const double rm = std::abs(traj.pos[i][2 * k] - cf.mu);
            const double rs = std::abs(traj.pos[i][2 * k + 1] - cf.sigma);
            max_res = std::max(max_res, std::max(rm, rs));
            const double ratio = tilde.pos[i][2 * k] / tilde.pos[i][2 * k + 1];
            row.insert(row.end(), {traj.pos[i][2 * k], traj.pos[i][2 * k + 1],
                                   original.pos[i][2 * k], original.pos[i][2 * k + 1], rm, rs,
                                   ratio});
        }
        w.add_row(row);
    }
    out.csv = w.str();

    nlohmann::json pairs = nlohmann::json::array();
    for (int k = 0; k < p.l(); ++k) {
        const auto hr = geodesics::hypothesis_ratio(traj, p, k);
        pairs.push_back({{"pair", k + 1},
                         {"fitted_ratio_rate", hr.fitted_rate},
                         {"lambda", p.lambda[k]},
                         {"bound_min_a1_over_a0", hr.bound},
                         {"final_abs_ratio", hr.final_abs_ratio},
                         {"hypothesis_satisfied", hr.satisfied}});
    }
    out.payload["max_residual_vs_closed_form"] = max_res;
    out.payload["hypothesis"] = pairs;
    out.payload["accepted_steps"] = traj.accepted_steps;
    if (out.abort_tau) out.payload["singularity_abort_tau"] = *out.abort_tau;
    out.summary = {{"max_residual", max_res},
                   {"final_ratio", pairs.empty() ? 0.0
                                                 : pairs[0]["final_abs_ratio"].get<double>()}};
    return out;
}

CommandOutput run_complexity(const RunConfig& cfg) {
    CommandOutput out;
    const auto& p = cfg.params;
    auto grid = cfg.resolved_tau_grid("complexity").values();
    if (!(grid.front() > 0.0)) throw ConfigError("complexity: tau grid must be positive");

    const auto curve = complexity::build_curve(p, grid, cfg.tol, true);

    report::CsvWriter w(
        {"tau", "v_closed", "v_numeric", "entropy", "entropy_numeric", "saturation"});
    for (std::size_t i = 0; i < curve.tau.size(); ++i) {
        // The numeric volume can dip below zero inside the transient for
        // small xi; its entropy is undefined there.
        const double s_num =
            curve.v_numeric[i] > 0.0 ? std::log(curve.v_numeric[i]) : std::nan("");
        w.add_row({curve.tau[i], curve.v_closed[i], curve.v_numeric[i], curve.entropy[i], s_num,
                   curve.saturation});
    }
    out.csv = w.str();

    nlohmann::json consts = nlohmann::json::array();
    for (int k = 0; k < p.l(); ++k) {
        consts.push_back({{"pair", k + 1},
                          {"Sigma", complexity::sigma_fn(p.r[k], p.lambda[k], p.xi[k])},
                          {"Lambda1", complexity::lambda1(p.r[k])},
                          {"Lambda2", complexity::lambda2(p.r[k], p.lambda[k], p.xi[k])},
                          {"Lambda2_bracket_route",
                           complexity::lambda2_bracket(p.r[k], p.lambda[k], p.xi[k])}});
    }
    out.payload["constants"] = consts;
    out.payload["saturation"] = curve.saturation;
    out.payload["lambda2_route_delta"] = curve.lambda2_route_delta;
    if (curve.lambda2_route_delta > 1e-9)
        out.payload["warning_lambda2_routes"] =
            "the two Lambda2 displays disagree; the compact form is used";
    if (curve.decay_fit_ok) {
        out.payload["decay_fit"] = fit_to_json(curve.decay);
    } else {
        out.payload["warning"] = "tau grid does not cover the decay fit window [1e2, 1e4]";
    }

    // Box-volume oracle at a mid-span time, next to the pipeline integrand.
    const double tp = std::min(10.0 / p.lambda.minCoeff(), grid.back());
    nlohmann::json boxes = nlohmann::json::array();
    for (int k = 0; k < p.l(); ++k) {
        const auto bv = complexity::box_volume_oracle(tp, p, k, cfg.tol);
        boxes.push_back({{"pair", k + 1},
                         {"tau_prime", tp},
                         {"volume_density_volume", bv.volume_density},
                         {"block_density_volume", bv.block_density},
                         {"pipeline_integrand", complexity::volume_integrand(tp, p.r[k],
                                                                             p.lambda[k], p.xi[k])}});
    }
    out.payload["box_volume_oracle"] = boxes;

    out.summary = {{"Sigma_1", consts[0]["Sigma"].get<double>()},
                   {"Lambda1_1", consts[0]["Lambda1"].get<double>()},
                   {"Lambda2_1", consts[0]["Lambda2"].get<double>()},
                   {"saturation", curve.saturation},
                   {"decay_exponent", curve.decay_fit_ok ? curve.decay.exponent
                                                         : std::nan("")},
                   {"v_at_tau_max", curve.v_closed.back()}};
    return out;
}

CommandOutput run_jacobi(const RunConfig& cfg) {
    CommandOutput out;
    const auto& p = cfg.params;
    auto grid = cfg.resolved_tau_grid("jacobi").values();

    Eigen::VectorXd J0 = Eigen::VectorXd::Ones(2 * p.l());
    Eigen::VectorXd dJ0 = Eigen::VectorXd::Zero(2 * p.l());
    const auto traj = jacobi::integrate_reduced(p, grid, J0, dJ0, cfg.tol);

    jacobi::JacobiConstants consts(p.l());
    bool consts_extracted = true;
    try {
        consts = jacobi::extract_constants(traj, p, 8.0, 12.0,
                                           jacobi::SecondComponentForm::verified);
    } catch (const std::invalid_argument&) {
        consts_extracted = false;  // window not covered; defaults C=1 stay
    }

    std::vector<std::string> header{"tau"};
    for (int k = 1; k <= p.l(); ++k)
        for (const char* name : {"j1", "j2", "j1_model", "j2_model"})
            header.push_back(std::string(name) + "_" + std::to_string(k));
    for (const char* name : {"intensity_tilde", "intensity_tilde_asymptotic", "intensity_original",
                             "intensity_larger", "sqrt_ratio"})
        header.emplace_back(name);
    report::CsvWriter w(header);

    // The unconstrained baseline uses 2l rates (each pair contributes two).
    Eigen::VectorXd lam2l(2 * p.l()), c02l(2 * p.l()), xi2l(2 * p.l());
    for (int k = 0; k < p.l(); ++k) {
        lam2l[2 * k] = lam2l[2 * k + 1] = p.lambda[k];
        c02l[2 * k] = c02l[2 * k + 1] = consts[k].c0;
        xi2l[2 * k] = xi2l[2 * k + 1] = p.xi[k];
    }

    std::vector<double> ts, it_tilde;
    for (std::size_t i = 0; i < traj.tau.size(); ++i) {
        const double t = traj.tau[i];
        std::vector<double> row{t};
        Eigen::VectorXd st(p.l()), so(p.l()), jo(2 * p.l());
        for (int k = 0; k < p.l(); ++k) {
            const auto [m1, m2] = jacobi::asymptotic_components(
                t, consts[k], p.lambda[k], jacobi::SecondComponentForm::verified);
            row.insert(row.end(), {traj.J[i][2 * k], traj.J[i][2 * k + 1], m1, m2});
            st[k] = geodesics::closed_form_primed(t, p.xi[k], p.lambda[k]).sigma;
            so[k] = geodesics::closed_form_original(t, p, k).second;
            const auto [o1, o2] =
                jacobi::components_original(traj.J[i][2 * k], traj.J[i][2 * k + 1], p.r[k]);
            jo[2 * k] = o1;
            jo[2 * k + 1] = o2;
        }
        const double i_tilde = jacobi::intensity_tilde_exact(traj.J[i], st, p);
        const double i_tilde_asym = jacobi::intensity_tilde_asymptotic(t, consts, p);
        const double i_orig = jacobi::intensity_original_exact(jo, so, p);
        const double i_larger = jacobi::larger_model_intensity(t, lam2l, c02l, xi2l);
        row.insert(row.end(),
                   {i_tilde, i_tilde_asym, i_orig, i_larger, std::sqrt(i_orig / i_larger)});
        w.add_row(row);
        if (t >= 0.75 * grid.back()) {
            ts.push_back(t);
            it_tilde.push_back(i_tilde);
        }
    }
    out.csv = w.str();

    const auto rgrid = numerics::linspace(0.005, 0.995, 199);
    const auto rep = jacobi::attenuation_report(rgrid);
    report::CsvWriter aw({"r", "tilde_definitional", "tilde_reference", "original_reference",
                          "original_alt", "sqrt_ratio_reference", "sqrt_ratio_alt"});
    for (std::size_t i = 0; i < rep.r.size(); ++i)
        aw.add_row({rep.r[i], rep.tilde_definitional[i], rep.tilde_reference[i],
                    rep.original_reference[i], rep.original_alt[i], rep.ratio_reference[i],
                    rep.ratio_alt[i]});
    out.secondary_csv = aw.str();
    out.secondary_suffix = ".attenuation.csv";

    const auto findings = jacobi::verify_limiting_forms(p.lambda.maxCoeff());
    const auto slope = numerics::fit_log_linear(ts, it_tilde);

    nlohmann::json jc = nlohmann::json::array();
    for (int k = 0; k < p.l(); ++k)
        jc.push_back({{"pair", k + 1},
                      {"c0", consts[k].c0},
                      {"c1", consts[k].c1},
                      {"c2", consts[k].c2},
                      {"c3", consts[k].c3}});
    out.payload["constants"] = jc;
    out.payload["constants_extracted"] = consts_extracted;
    out.payload["intensity_tilde_log_slope"] = slope.exponent;
    out.payload["expected_log_slope"] = 2.0 * p.lambda.maxCoeff();
    out.payload["limiting_substitution"] = {
        {"const_plus_exp2_ok", findings.const_plus_exp2_ok},
        {"exp_lambda_ok", findings.exp_lambda_ok},
        {"tau_exp_lambda_ok", findings.tau_exp_lambda_ok},
        {"tau_exp_two_lambda_ok", findings.tau_exp_two_lambda_ok},
        {"note", "the reference tau*exp(-2 lambda tau) term does not satisfy the limiting "
                 "system; the verified basis tau*exp(-lambda tau) is used for model columns"}};
    out.payload["attenuation"] = {
        {"tilde_definitional_max",
         {{"argmax", rep.tilde_definitional_max.argmax}, {"max", rep.tilde_definitional_max.max}}},
        {"tilde_reference_max",
         {{"argmax", rep.tilde_reference_max.argmax}, {"max", rep.tilde_reference_max.max}}},
        {"original_reference_max",
         {{"argmax", rep.original_reference_max.argmax}, {"max", rep.original_reference_max.max}}},
        {"original_alt_max",
         {{"argmax", rep.original_alt_max.argmax}, {"max", rep.original_alt_max.max}}},
        {"sup_sqrt_ratio_reference", rep.sup_sqrt_ratio_reference},
        {"sup_sqrt_ratio_alt", rep.sup_sqrt_ratio_alt},
        {"reference_ratio_below_04", rep.reference_ratio_below_04},
        {"alt_ratio_below_04", rep.alt_ratio_below_04},
        {"matches_stated_015_065",
         rep.original_max_matches_015 && rep.original_argmax_matches_065},
        {"stated_max_3_minus_2sqrt2_reproduced", rep.tilde_matches_stated_max}};
    out.summary = {{"intensity_slope", slope.exponent},
                   {"tilde_attenuation_max", rep.tilde_definitional_max.max},
                   {"sup_sqrt_ratio_reference", rep.sup_sqrt_ratio_reference}};
    return out;
}

CommandOutput run_embed(const RunConfig& cfg) {
    if (!cfg.embedding) throw ConfigError("embed: missing embedding spec (a1, a2)");
    CommandOutput out;
    const double a1 = cfg.embedding->a1, a2 = cfg.embedding->a2;
    const auto spec = embedding::EmbeddingSpec::linear(a1, a2);
    const auto coeffs = embedding::induced_coefficients(a1, a2);
    const double r_analytic = embedding::correlation_from_linear(a1, a2);
    constexpr double kPullbackStep = 1e-4;
    const auto oracle = embedding::pullback_metric_oracle(spec, 0.7, 1.3, kPullbackStep);
    const double delta = std::abs(oracle.r - r_analytic);

    report::CsvWriter w({"a1", "a2", "A_mumu", "A_musigma", "A_sigmasigma", "r_analytic",
                         "r_pullback", "delta"});
    w.add_row({a1, a2, coeffs.A_mumu, coeffs.A_musigma, coeffs.A_sigmasigma, r_analytic, oracle.r,
               delta});
    out.csv = w.str();
    out.payload = {{"a1", a1},
                   {"a2", a2},
                   {"A_mumu", coeffs.A_mumu},
                   {"A_musigma", coeffs.A_musigma},
                   {"A_sigmasigma", coeffs.A_sigmasigma},
                   {"r_analytic", r_analytic},
                   {"r_pullback", oracle.r},
                   {"delta", delta},
                   {"pullback_step", kPullbackStep}};
    out.summary = {{"r_analytic", r_analytic}, {"r_pullback", oracle.r}, {"delta", delta}};
    return out;
}

CommandOutput run_command(const std::string& name, const RunConfig& cfg);

CommandOutput run_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("sweep: missing sweep spec");
    const auto& sweep = *cfg.sweep;
    CommandOutput out;

    struct Slot {
        bool ok = false;
        Summary summary;
        std::string error;
    };
    std::vector<Slot> slots(sweep.values.size());

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned jobs =
        std::min<unsigned>(cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs) : hw,
                           static_cast<unsigned>(sweep.values.size()));

    std::mutex next_mutex;
    std::size_t next = 0;
    auto worker = [&]() {
        while (true) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= sweep.values.size()) return;
                i = next++;
            }
            RunConfig local = cfg;
            local.sweep.reset();
            const double v = sweep.values[i];
            const int l = local.params.l();
            if (sweep.parameter == "r")
                local.params.r = Eigen::VectorXd::Constant(l, v);
            else if (sweep.parameter == "lambda")
                local.params.lambda = Eigen::VectorXd::Constant(l, v);
            else
                local.params.xi = Eigen::VectorXd::Constant(l, v);
            try {
                const auto result = run_command(sweep.command, local);
                if (result.abort_tau) {
                    slots[i].error = "singularity abort at tau " +
                                     report::format_shortest(*result.abort_tau);
                } else {
                    slots[i].summary = result.summary;
                    slots[i].ok = true;
                }
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // Emission is ordered by input index regardless of execution order.
    std::vector<std::string> names;
    for (const auto& s : slots)
        if (s.ok) {
            for (const auto& [n, _] : s.summary) names.push_back(n);
            break;
        }
    std::vector<std::string> header{"parameter", "value", "status"};
    header.insert(header.end(), names.begin(), names.end());
    report::CsvWriter w(header);
    nlohmann::json results = nlohmann::json::array();
    bool any_failed = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        std::vector<std::string> row{sweep.parameter, report::format_shortest(sweep.values[i]),
                                     slots[i].ok ? "ok" : "error"};
        nlohmann::json jr = {{"parameter", sweep.parameter},
                             {"value", sweep.values[i]},
                             {"status", slots[i].ok ? "ok" : "error"}};
        if (slots[i].ok) {
            for (const auto& [n, val] : slots[i].summary) {
                row.push_back(report::format_shortest(val));
                jr[n] = val;
            }
        } else {
            any_failed = true;
            for (std::size_t c = 0; c < names.size(); ++c) row.emplace_back("nan");
            jr["error"] = slots[i].error;
        }
        w.add_row_mixed(row);
        results.push_back(jr);
    }
    out.csv = w.str();
    out.payload["command"] = sweep.command;
    out.payload["results"] = results;
    out.payload["any_failed"] = any_failed;
    if (any_failed) out.abort_tau = 0.0;  // reuse the nonzero-exit signal
    return out;
}

CommandOutput run_command(const std::string& name, const RunConfig& cfg) {
    if (name == "curvature") return run_curvature(cfg);
    if (name == "geodesic") return run_geodesic(cfg);
    if (name == "complexity") return run_complexity(cfg);
    if (name == "jacobi") return run_jacobi(cfg);
    if (name == "embed") return run_embed(cfg);
    if (name == "sweep") return run_sweep(cfg);
    throw ConfigError("unknown command: " + name);
}

void emit(const std::string& command, const RunConfig& cfg, const CommandOutput& out) {
    if (cfg.output.format == "json") {
        nlohmann::json payload = out.payload;
        const auto env = report::make_envelope(command, cfg.to_json(), payload);
        const std::string text = report::dump_json(env);
        if (cfg.output.path.empty())
            std::cout << text;
        else
            report::write_file(cfg.output.path, text);
        return;
    }
    if (cfg.output.path.empty()) {
        std::cout << out.csv;
    } else {
        report::write_file(cfg.output.path, out.csv);
        if (!out.secondary_csv.empty())
            report::write_file(cfg.output.path + out.secondary_suffix, out.secondary_csv);
    }
}

}  // namespace

int run_main(int argc, char** argv) {
    CLI::App app{"information-geometry engine for the correlated Gaussian model"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_flag, format_flag;
    double tau_max = std::numeric_limits<double>::quiet_NaN();
    double tol_flag = std::numeric_limits<double>::quiet_NaN();
    int jobs_flag = -1;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--tau-max", tau_max, "override the tau grid stop");
    app.add_option("--tol", tol_flag, "override abs and rel tolerances");
    app.add_option("--out", out_flag, "output file path (default stdout)");
    app.add_option("--format", format_flag, "output format: csv or json");
    app.add_option("--jobs", jobs_flag, "sweep concurrency (default: hardware)");

    for (const char* name : {"curvature", "geodesic", "complexity", "jacobi", "embed", "sweep"})
        app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    app.add_subcommand("verify", "run the acceptance suite and print a pass/fail table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file: " + config_path);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            cfg = RunConfig::from_json(j);
        }
        if (!out_flag.empty()) cfg.output.path = out_flag;
        if (!format_flag.empty()) cfg.output.format = format_flag;
        if (!std::isnan(tol_flag)) {
            cfg.tol.abs_tol = tol_flag;
            cfg.tol.rel_tol = tol_flag;
        }
        if (jobs_flag >= 0) cfg.jobs = jobs_flag;

        const std::string command = app.get_subcommands().front()->get_name();
        if (!std::isnan(tau_max)) {
            TauGrid g = cfg.resolved_tau_grid(command);
            g.stop = tau_max;
            cfg.tau_grid = g;
        }
        cfg.validate();

        int code = 0;
        if (command == "verify") {
            const auto results = acceptance::run_all();
            std::cout << acceptance::to_table(results);
            if (!cfg.output.path.empty())
                report::write_file(cfg.output.path,
                                   report::dump_json(report::make_envelope(
                                       "verify", cfg.to_json(), acceptance::to_json(results))));
            code = acceptance::all_passed(results) ? 0 : 3;
        } else {
            const auto out = run_command(command, cfg);
            emit(command, cfg, out);
            if (out.abort_tau) code = 3;
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cerr << command << ": done in " << ms << " ms\n";
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace igeo::cli
