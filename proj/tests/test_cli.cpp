#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "igeo/cli_config.hpp"
#include "igeo/report.hpp"

using namespace igeo;
using namespace igeo::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "igeoflow_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stderr_to = "/dev/null") {
    const std::string cmd = std::string(IGEOFLOW_BIN) + " " + args + " 2>" + stderr_to;
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("config: scalar broadcasting, round trip, defaults") {
    const auto j = nlohmann::json::parse(R"({"params": {"l": 3, "r": 0.4, "lambda": [1, 2, 3]}})");
    const auto cfg = RunConfig::from_json(j);
    CHECK(cfg.params.l() == 3);
    CHECK(cfg.params.r[2] == 0.4);
    CHECK(cfg.params.lambda[1] == 2.0);
    CHECK(cfg.params.xi[0] == 8.0);
    CHECK_NOTHROW(cfg.validate());

    const auto echo = cfg.to_json();
    const auto cfg2 = RunConfig::from_json(echo);
    CHECK(report::dump_json(cfg2.to_json()) == report::dump_json(echo));
}

TEST_CASE("config validation errors") {
    auto bad_r = RunConfig::from_json(nlohmann::json::parse(R"({"params": {"r": 1.5}})"));
    CHECK_THROWS_WITH_AS(bad_r.validate(), "ModelParams: r out of (0,1)", ConfigError);

    auto bad_grid = RunConfig::from_json(
        nlohmann::json::parse(R"({"tau_grid": {"start": 0, "stop": 10, "count": 1}})"));
    CHECK_THROWS_AS(bad_grid.validate(), ConfigError);

    auto bad_sweep = RunConfig::from_json(
        nlohmann::json::parse(R"({"sweep": {"parameter": "r", "values": []}})"));
    CHECK_THROWS_AS(bad_sweep.validate(), ConfigError);

    auto bad_param = RunConfig::from_json(
        nlohmann::json::parse(R"({"sweep": {"parameter": "bogus", "values": [1]}})"));
    CHECK_THROWS_AS(bad_param.validate(), ConfigError);

    auto bad_format = RunConfig::from_json(
        nlohmann::json::parse(R"({"output": {"path": "x", "format": "xml"}})"));
    CHECK_THROWS_AS(bad_format.validate(), ConfigError);

    CHECK_THROWS_AS(
        RunConfig::from_json(nlohmann::json::parse(R"({"params": {"r": "half"}})")),
        ConfigError);
}

TEST_CASE("tau grid spacing") {
    TauGrid lin{0.0, 10.0, 11, false};
    const auto lv = lin.values();
    CHECK(lv.front() == 0.0);
    CHECK(lv.back() == 10.0);
    CHECK(lv[5] == doctest::Approx(5.0));

    TauGrid log{1.0, 100.0, 3, true};
    const auto gv = log.values();
    CHECK(gv[1] == doctest::Approx(10.0).epsilon(1e-12));
    TauGrid bad{0.0, 100.0, 3, true};
    CHECK_THROWS_AS(bad.values(), ConfigError);
}

TEST_CASE("binary: exit codes") {
    TempDir tmp;
    CHECK(run("curvature --out " + tmp.file("c.csv")) == 0);

    write(tmp.file("bad_r.json"), R"({"params": {"r": 1.5}})");
    const int rc = run("curvature --config " + tmp.file("bad_r.json"), tmp.file("err.txt"));
    CHECK(rc == 2);
    CHECK(slurp(tmp.file("err.txt")).find("r out of (0,1)") != std::string::npos);

    write(tmp.file("broken.json"), "{not json");
    CHECK(run("curvature --config " + tmp.file("broken.json")) == 2);

    CHECK(run("embed") == 2);  // missing embedding spec
    CHECK(run("bogus-command") == 2);
    CHECK(run("complexity --format xml") == 2);

    write(tmp.file("short_grid.json"),
          R"({"tau_grid": {"start": 0, "stop": 10, "count": 1}})");
    CHECK(run("geodesic --config " + tmp.file("short_grid.json")) == 2);

    write(tmp.file("empty_sweep.json"),
          R"({"sweep": {"parameter": "r", "values": [], "command": "complexity"}})");
    CHECK(run("sweep --config " + tmp.file("empty_sweep.json")) == 2);

    CHECK(run("curvature --tol 0") == 2);  // both tolerances zeroed is invalid
}

TEST_CASE("binary: json envelope on stdout") {
    TempDir tmp;
    const std::string cmd = std::string(IGEOFLOW_BIN) + " curvature --format json 2>/dev/null > " +
                            tmp.file("stdout.json");
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    const auto env = nlohmann::json::parse(slurp(tmp.file("stdout.json")));
    CHECK(env["schema_version"] == 1);
    CHECK(env["payload"].contains("scalar_curvature"));
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int column_of(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_CASE("binary: geodesic CSV schema, residual column, two-pair doubling") {
    TempDir tmp;
    CHECK(run("geodesic --out " + tmp.file("g1.csv")) == 0);
    const auto rows = parse_csv(slurp(tmp.file("g1.csv")));
    REQUIRE(rows.size() == 202);  // header + default 201-point grid
    CHECK(rows[0] == std::vector<std::string>{"tau", "mu_prime_1", "sigma_prime_1", "mu_1",
                                              "sigma_1", "res_mu_1", "res_sigma_1", "ratio_1"});
    const int res_mu = column_of(rows[0], "res_mu_1");
    const int res_sg = column_of(rows[0], "res_sigma_1");
    double max_res = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        max_res = std::max(max_res, std::stod(rows[i][res_mu]));
        max_res = std::max(max_res, std::stod(rows[i][res_sg]));
    }
    CHECK(max_res < 1e-6);  // terminal residual column against the closed form

    write(tmp.file("two.json"), R"({"params": {"l": 2, "r": [0.3, 0.6]}})");
    CHECK(run("geodesic --config " + tmp.file("two.json") + " --out " + tmp.file("g2.csv")) == 0);
    const auto csv2 = slurp(tmp.file("g2.csv"));
    const auto header2 = csv2.substr(0, csv2.find('\n'));
    CHECK(header2.find("mu_prime_2") != std::string::npos);
    CHECK(header2.find("ratio_2") != std::string::npos);
}

TEST_CASE("binary: curvature limit and embed values through the pipeline") {
    TempDir tmp;
    write(tmp.file("limit.json"), R"({"params": {"l": 3, "r": 1e-6}})");
    CHECK(run("curvature --config " + tmp.file("limit.json") + " --out " + tmp.file("r.csv")) ==
          0);
    const auto rows = parse_csv(slurp(tmp.file("r.csv")));
    const int col = column_of(rows[0], "scalar_curvature");
    REQUIRE(col >= 0);
    CHECK(std::stod(rows[1][col]) == doctest::Approx(-3.0).epsilon(1e-5));

    write(tmp.file("e12.json"), R"({"embedding": {"a1": 1, "a2": 2}})");
    CHECK(run("embed --config " + tmp.file("e12.json") + " --out " + tmp.file("e12.csv")) == 0);
    const auto e12 = parse_csv(slurp(tmp.file("e12.csv")));
    CHECK(std::stod(e12[1][column_of(e12[0], "r_analytic")]) ==
          doctest::Approx(0.707107).epsilon(1e-6));
    CHECK(std::stod(e12[1][column_of(e12[0], "delta")]) < 1e-6);

    write(tmp.file("e05.json"), R"({"embedding": {"a1": 0, "a2": 5}})");
    CHECK(run("embed --config " + tmp.file("e05.json") + " --out " + tmp.file("e05.csv")) == 0);
    const auto e05 = parse_csv(slurp(tmp.file("e05.csv")));
    CHECK(std::stod(e05[1][column_of(e05[0], "r_analytic")]) == 0.0);
}

TEST_CASE("binary: tau-max override and sweep failure rows") {
    TempDir tmp;
    CHECK(run("geodesic --tau-max 5 --out " + tmp.file("g.csv")) == 0);
    const auto rows = parse_csv(slurp(tmp.file("g.csv")));
    CHECK(std::stod(rows.back()[0]) == doctest::Approx(5.0).epsilon(1e-12));

    // lambda = 10 drives sigma to the floor inside the default span: the value
    // is recorded as a failed row and the run exits nonzero.
    write(tmp.file("fail.json"), R"({
        "sweep": {"parameter": "lambda", "values": [0.5, 10.0], "command": "geodesic"}
    })");
    const int rc = run("sweep --config " + tmp.file("fail.json") + " --out " + tmp.file("s.csv"));
    CHECK(rc == 3);
    const auto srows = parse_csv(slurp(tmp.file("s.csv")));
    REQUIRE(srows.size() == 3);
    CHECK(srows[1][2] == "ok");
    CHECK(srows[2][2] == "error");
}

TEST_CASE("binary: deterministic outputs") {
    TempDir tmp;
    for (const std::string cmd : {"curvature", "geodesic", "embed", "jacobi"}) {
        std::string extra;
        if (cmd == "embed") {
            write(tmp.file("embed.json"), R"({"embedding": {"a1": 1.0, "a2": 2.0}})");
            extra = " --config " + tmp.file("embed.json");
        }
        CHECK(run(cmd + extra + " --out " + tmp.file("a.out")) == 0);
        CHECK(run(cmd + extra + " --out " + tmp.file("b.out")) == 0);
        CHECK(slurp(tmp.file("a.out")) == slurp(tmp.file("b.out")));
        CHECK(!slurp(tmp.file("a.out")).empty());
    }
    // The jacobi run also emits the attenuation table.
    CHECK(fs::exists(tmp.file("b.out") + ".attenuation.csv"));
}

TEST_CASE("binary: verify is reproducible byte for byte") {
    TempDir tmp;
    // Identical invocations must produce identical bytes (the envelope echoes
    // the config, so the output path itself must match across runs).
    CHECK(run("verify --out " + tmp.file("v.json"), tmp.file("t1.txt")) == 0);
    const auto v1 = slurp(tmp.file("v.json"));
    CHECK(run("verify --out " + tmp.file("v.json"), tmp.file("t2.txt")) == 0);
    CHECK(v1 == slurp(tmp.file("v.json")));

    const auto env = nlohmann::json::parse(v1);
    CHECK(env["schema_version"] == 1);
    CHECK(env["command"] == "verify");
    CHECK(env["payload"]["all_passed"] == true);
    CHECK(env["payload"]["criteria"].size() == 11);
}

TEST_CASE("binary: json envelope schema and config echo") {
    TempDir tmp;
    write(tmp.file("cfg.json"), R"({"params": {"r": 0.25}, "output": {"format": "json"}})");
    CHECK(run("complexity --config " + tmp.file("cfg.json") + " --out " + tmp.file("c.json")) ==
          0);
    const auto env = nlohmann::json::parse(slurp(tmp.file("c.json")));
    CHECK(env["schema_version"] == 1);
    CHECK(env["command"] == "complexity");
    CHECK(env["config"]["params"]["r"][0] == 0.25);
    CHECK(env["provenance"].contains("version"));
    CHECK(env["payload"].contains("constants"));
    CHECK(env["payload"].contains("box_volume_oracle"));
    // Echo must itself parse back into an equivalent config.
    const auto cfg = RunConfig::from_json(env["config"]);
    CHECK(cfg.params.r[0] == 0.25);
}

TEST_CASE("binary: sweep rows, ordering, concurrency determinism, monotone region") {
    TempDir tmp;
    write(tmp.file("sweep.json"), R"({
        "sweep": {"parameter": "r",
                  "values": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
                  "command": "complexity"},
        "tau_grid": {"start": 1, "stop": 1000, "count": 33, "spacing": "log"}
    })");
    CHECK(run("sweep --config " + tmp.file("sweep.json") + " --jobs 4 --out " +
              tmp.file("s4.csv")) == 0);
    CHECK(run("sweep --config " + tmp.file("sweep.json") + " --jobs 1 --out " +
              tmp.file("s1.csv")) == 0);
    const auto s4 = slurp(tmp.file("s4.csv"));
    CHECK(s4 == slurp(tmp.file("s1.csv")));

    std::vector<std::string> lines;
    std::stringstream ss(s4);
    for (std::string line; std::getline(ss, line);) lines.push_back(line);
    REQUIRE(lines.size() == 10);  // header + 9 rows
    CHECK(lines[0].rfind("parameter,value,status", 0) == 0);

    // Lambda1 column: find its index, check monotone growth on (0, 0.765).
    std::vector<std::string> cols;
    std::stringstream hs(lines[0]);
    for (std::string c; std::getline(hs, c, ',');) cols.push_back(c);
    int lam_idx = -1;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == "Lambda1_1") lam_idx = static_cast<int>(i);
    REQUIRE(lam_idx >= 0);
    std::vector<double> lam1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::stringstream ls(lines[i]);
        std::string cell;
        for (int c = 0; std::getline(ls, cell, ','); ++c)
            if (c == lam_idx) lam1.push_back(std::stod(cell));
    }
    REQUIRE(lam1.size() == 9);
    for (int i = 0; i + 1 < 7; ++i) CHECK(lam1[i] < lam1[i + 1]);  // r = 0.1 .. 0.7
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(report::format_shortest(0.1) == "0.1");
    CHECK(report::format_shortest(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(report::format_shortest(1e5)) == 1e5);
    const double v = 0.5479530378546754;
    CHECK(std::stod(report::format_shortest(v)) == v);
}
