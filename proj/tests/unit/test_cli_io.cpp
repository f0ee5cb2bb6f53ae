#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wlab/cli.hpp"
#include "wlab/config.hpp"
#include "wlab/errors.hpp"

using namespace wlab;
using namespace wlab::cli;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}
} // namespace

TEST_CASE("config parsing with sections, comments and overrides") {
    KeyValues kv;
    kv.parse_line("[surface]");
    kv.parse_line("name = \"helicoid\"  # trailing comment");
    kv.parse_line("");
    kv.parse_line("# full comment");
    kv.parse_line("[tolerances]");
    kv.parse_line("period = 1e-9");
    kv.parse_line("[grid]");
    kv.parse_line("line_n = 128");
    kv.set("output.dir", "outdir");
    CHECK(kv.get_string("surface.name", "") == "helicoid");
    CHECK(kv.get_double("tolerances.period", 0.0) == 1e-9);
    CHECK(kv.get_int("grid.line_n", 0) == 128);
    CHECK(kv.get_string("output.dir", "") == "outdir");

    const RunConfig cfg = RunConfig::from(kv);
    CHECK(cfg.surface == "helicoid");
    CHECK(cfg.tol_period == 1e-9);
    CHECK(cfg.line_n == 128);
    CHECK(cfg.outdir == "outdir");

    CHECK_THROWS_AS(kv.parse_line("malformed line"), Error);
    KeyValues bad;
    bad.set("grid.line_n", "100"); // not a power of two
    CHECK_THROWS_AS(RunConfig::from(bad), Error);
    KeyValues badtol;
    badtol.set("tolerances.period", "-1");
    CHECK_THROWS_AS(RunConfig::from(badtol), Error);
}

TEST_CASE("hierarchy command prints the operators") {
    std::ostringstream out;
    CHECK(cmd_kdv_hierarchy(3, out) == 0);
    const std::string text = out.str();
    CHECK(text.find("P_2(u) = u'' + 3*u^2") != std::string::npos);
    CHECK(text.find("P_3(u) = u^(4) + 10*u*u'' + 5*u'^2 + 10*u^3") != std::string::npos);
    CHECK(text.find("du/dt_0 = -u'") != std::string::npos);
    std::ostringstream bad;
    CHECK(cmd_kdv_hierarchy(9, bad) == 2);
}

TEST_CASE("mesh command writes deterministic outputs with metadata") {
    RunConfig cfg;
    cfg.surface = "catenoid";
    cfg.outdir = "cli_out";
    cfg.mesh_nu = 17;
    cfg.mesh_nv = 17;
    std::ostringstream out;
    REQUIRE(cmd_mesh(cfg, out) == 0);
    const std::string obj1 = slurp("cli_out/catenoid.obj");
    const std::string json1 = slurp("cli_out/catenoid.json");
    REQUIRE(!obj1.empty());
    REQUIRE(!json1.empty());
    const auto meta = nlohmann::json::parse(json1);
    CHECK(std::abs(meta["flux"][2].get<double>() - 2.0 * 3.14159265358979) < 1e-6);
    CHECK(meta["period_residual"].get<double>() < 1e-8);
    // determinism
    std::ostringstream out2;
    REQUIRE(cmd_mesh(cfg, out2) == 0);
    CHECK(slurp("cli_out/catenoid.obj") == obj1);
    CHECK(slurp("cli_out/catenoid.json") == json1);

    RunConfig badcfg;
    badcfg.surface = "moebius";
    std::ostringstream err;
    CHECK(cmd_mesh(badcfg, err) == 2);
}

TEST_CASE("plane diagnostics pass end to end") {
    RunConfig cfg;
    cfg.surface = "plane";
    cfg.outdir = "cli_out";
    std::ostringstream out;
    CHECK(cmd_diagnose(cfg, out) == 0);
    const auto rep = nlohmann::json::parse(slurp("cli_out/diagnose_plane.json"));
    CHECK(rep["all_pass"].get<bool>());
    for (const auto& c : rep["checks"]) CHECK(c["pass"].get<bool>());
}

TEST_CASE("soliton harness command") {
    RunConfig cfg;
    std::ostringstream out;
    CHECK(cmd_kdv_soliton(cfg, out) == 0);
    CHECK(out.str().find("soliton shape error") != std::string::npos);
}

TEST_CASE("agtest command on the canonical potentials") {
    RunConfig cfg;
    std::ostringstream out;
    CHECK(cmd_kdv_agtest(cfg, "constant", out) == 0);
    CHECK(cmd_kdv_agtest(cfg, "rational", out) == 0);
    CHECK(cmd_kdv_agtest(cfg, "nonsense", out) == 2);
    CHECK(out.str().find("rank") != std::string::npos);
}

TEST_CASE("end fit command") {
    RunConfig cfg;
    cfg.surface = "catenoid";
    cfg.outdir = "cli_out";
    std::ostringstream out;
    CHECK(cmd_fit_end(cfg, out) == 0);
    const auto fit = nlohmann::json::parse(slurp("cli_out/fit_end_catenoid.json"));
    CHECK(std::abs(fit["log_growth_a"].get<double>() - 1.0) < 1e-3);
}

TEST_CASE("flow command writes the step log") {
    RunConfig cfg;
    cfg.surface = "riemann:lambda=1";
    cfg.outdir = "cli_out";
    cfg.flow_T = 0.002;
    cfg.dump_lines = true;
    std::ostringstream out;
    CHECK(cmd_flow(cfg, out) == 0);
    const std::string log = slurp("cli_out/flow_riemann_lambda_1.csv");
    CHECK(log.rfind("t,", 0) == 0);
    CHECK(log.find("\r\n") != std::string::npos);
    const std::string blob = slurp("cli_out/flow_riemann_lambda_1_u.bin");
    CHECK(blob.size() == 8 + 16 * 256);
    RunConfig bad;
    bad.surface = "plane";
    std::ostringstream err;
    CHECK(cmd_flow(bad, err) == 2);
}
