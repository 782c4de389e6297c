#include "igeo/cli_config.hpp"

#include <cmath>
#include <set>

#include "igeo/numerics.hpp"

namespace igeo::cli {

std::vector<double> TauGrid::values() const {
    if (count < 2) throw ConfigError("tau_grid: count must be >= 2");
    if (log_spacing) {
        if (!(start > 0.0)) throw ConfigError("tau_grid: log spacing requires start > 0");
        return numerics::logspace(start, stop, count);
    }
    if (!(stop > start)) throw ConfigError("tau_grid: stop must exceed start");
    return numerics::linspace(start, stop, count);
}

namespace {

Eigen::VectorXd parse_vector(const nlohmann::json& j, int l) {
    if (j.is_number()) return Eigen::VectorXd::Constant(l, j.get<double>());
    if (!j.is_array() || j.empty()) throw ConfigError("params: expected number or array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    try {
        if (j.contains("params")) {
            const auto& p = j["params"];
            int l = p.value("l", 0);
            if (l == 0) {
                // Infer l from the longest array among r, lambda, xi.
                for (const char* key : {"r", "lambda", "xi"})
                    if (p.contains(key) && p[key].is_array())
                        l = std::max(l, static_cast<int>(p[key].size()));
                if (l == 0) l = 1;
            }
            cfg.params.r = p.contains("r") ? parse_vector(p["r"], l) : Eigen::VectorXd::Constant(l, 0.5);
            cfg.params.lambda =
                p.contains("lambda") ? parse_vector(p["lambda"], l) : Eigen::VectorXd::Constant(l, 1.0);
            cfg.params.xi = p.contains("xi") ? parse_vector(p["xi"], l) : Eigen::VectorXd::Constant(l, 8.0);
        }
        if (j.contains("tau_grid")) {
            const auto& t = j["tau_grid"];
            TauGrid g;
            g.start = t.value("start", g.start);
            g.stop = t.value("stop", g.stop);
            g.count = t.value("count", g.count);
            const std::string spacing = t.value("spacing", "linear");
            if (spacing != "linear" && spacing != "log")
                throw ConfigError("tau_grid: spacing must be 'linear' or 'log'");
            g.log_spacing = spacing == "log";
            cfg.tau_grid = g;
        }
        if (j.contains("tolerances")) {
            const auto& t = j["tolerances"];
            cfg.tol.abs_tol = t.value("abs_tol", cfg.tol.abs_tol);
            cfg.tol.rel_tol = t.value("rel_tol", cfg.tol.rel_tol);
            cfg.tol.max_steps = t.value("max_steps", cfg.tol.max_steps);
        }
        if (j.contains("sigma_grid")) {
            cfg.sigma_grid.clear();
            for (const auto& s : j["sigma_grid"]) cfg.sigma_grid.push_back(s.get<double>());
        }
        if (j.contains("sweep") && !j["sweep"].is_null()) {
            SweepSpec s;
            s.parameter = j["sweep"].value("parameter", "");
            s.command = j["sweep"].value("command", s.command);
            if (j["sweep"].contains("values"))
                for (const auto& v : j["sweep"]["values"]) s.values.push_back(v.get<double>());
            cfg.sweep = s;
        }
        if (j.contains("output") && !j["output"].is_null()) {
            cfg.output.path = j["output"].value("path", "");
            cfg.output.format = j["output"].value("format", "csv");
        }
        if (j.contains("embedding") && !j["embedding"].is_null()) {
            EmbeddingConfig e;
            e.a1 = j["embedding"].value("a1", e.a1);
            e.a2 = j["embedding"].value("a2", e.a2);
            cfg.embedding = e;
        }
        cfg.jobs = j.value("jobs", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["params"] = {{"l", params.l()},
                   {"r", vector_to_json(params.r)},
                   {"lambda", vector_to_json(params.lambda)},
                   {"xi", vector_to_json(params.xi)}};
    if (tau_grid) {
        j["tau_grid"] = {{"start", tau_grid->start},
                         {"stop", tau_grid->stop},
                         {"count", tau_grid->count},
                         {"spacing", tau_grid->log_spacing ? "log" : "linear"}};
    }
    j["tolerances"] = {
        {"abs_tol", tol.abs_tol}, {"rel_tol", tol.rel_tol}, {"max_steps", tol.max_steps}};
    j["sigma_grid"] = sigma_grid;
    if (sweep)
        j["sweep"] = {
            {"parameter", sweep->parameter}, {"values", sweep->values}, {"command", sweep->command}};
    if (!output.path.empty() || output.format != "csv")
        j["output"] = {{"path", output.path}, {"format", output.format}};
    if (embedding) j["embedding"] = {{"a1", embedding->a1}, {"a2", embedding->a2}};
    if (jobs != 0) j["jobs"] = jobs;
    return j;
}

void RunConfig::validate() const {
    try {
        params.validate();
        tol.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (tau_grid) (void)tau_grid->values();
    for (double s : sigma_grid)
        if (!(s > 0.0)) throw ConfigError("sigma_grid: entries must be > 0");
    if (output.format != "csv" && output.format != "json")
        throw ConfigError("output format must be 'csv' or 'json'");
    if (jobs < 0) throw ConfigError("jobs must be >= 0");
    if (sweep) {
        static const std::set<std::string> kParams{"r", "lambda", "xi"};
        if (!kParams.count(sweep->parameter))
            throw ConfigError("sweep parameter must be one of r, lambda, xi");
        if (sweep->values.empty()) throw ConfigError("sweep: empty value list");
        static const std::set<std::string> kCommands{"curvature", "geodesic", "complexity",
                                                     "jacobi", "embed"};
        if (!kCommands.count(sweep->command))
            throw ConfigError("sweep command must be one of curvature, geodesic, complexity, "
                              "jacobi, embed");
        for (double v : sweep->values) {
            if (sweep->parameter == "r" && !(v > 0.0 && v < 1.0))
                throw ConfigError("sweep: r out of (0,1)");
            if (sweep->parameter != "r" && !(v > 0.0))
                throw ConfigError("sweep: " + sweep->parameter + " must be > 0");
        }
    }
    if (embedding) {
        if (!std::isfinite(embedding->a1) || !std::isfinite(embedding->a2))
            throw ConfigError("embedding coefficients must be finite");
    }
}

TauGrid RunConfig::resolved_tau_grid(const std::string& command) const {
    if (tau_grid) return *tau_grid;
    TauGrid g;
    if (command == "complexity") {
        g.start = 1.0;
        g.stop = 1e4;
        g.count = 129;
        g.log_spacing = true;
    } else {
        g.start = 0.0;
        g.stop = 20.0;
        g.count = 201;
        g.log_spacing = false;
    }
    return g;
}

}  // namespace igeo::cli
