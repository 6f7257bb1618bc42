#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

#include "cli.hpp"
#include "qtweezer/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = qtweezer::cli::dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch_file(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / ("qtweezer_cli_" + name);
    std::ofstream(p) << text;
    return p;
}

const std::string cfg = qtweezer::testing::baseline_path();

} // namespace

TEST_CASE("fidelity happy path emits JSON on stdout only") {
    const Run r = run({"fidelity", "--config", cfg, "--set", "theta=pi/2"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const json j = json::parse(r.out);
    CHECK(j["P"].get<double>() == doctest::Approx(0.999345).epsilon(2e-6));
    for (const char* key : {"g", "g_min", "tau0", "validity"}) CHECK(j.contains(key));
    CHECK(j["validity"]["valid"] == true);
}

TEST_CASE("built-in preset matches the shipped baseline file") {
    const Run a = run({"fidelity", "-c", "baseline"});
    const Run b = run({"fidelity", "-c", cfg});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("g_ab sweep gives a 41-row CSV") {
    const Run r = run({"sweep", "--config", cfg, "--param", "g_ab_over_g_b", "--range", "0:2:41"});
    CHECK(r.code == 0);
    const auto table = qtweezer::sweep_from_csv(r.out);
    REQUIRE(table.rows.size() == 41);
    std::size_t best = 0;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        if (table.rows[i].fidelity > table.rows[best].fidelity) best = i;
    CHECK(table.rows[best].value == doctest::Approx(1.0));
}

TEST_CASE("sweep grids in explicit units and log spacing") {
    const Run r = run({"sweep", "-c", cfg, "--param", "Omega_eff", "--range", "0.1:100:4", "--log", "--unit", "kHz_x2pi",
                       "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 4);
    CHECK(j["rows"][1]["value"].get<double>() == doctest::Approx(2 * qtweezer::constants::pi * 1e3).epsilon(1e-12));
    // 2 pi x 100 kHz leaves the perturbative regime; the warning goes to stderr
    CHECK(r.err.find("validity") != std::string::npos);

    const Run vals = run({"sweep", "-c", cfg, "--param", "theta", "--values", "pi/4,pi/2"});
    CHECK(vals.code == 0);
    CHECK(qtweezer::sweep_from_csv(vals.out).rows.size() == 2);
}

TEST_CASE("strict mode turns validity failures into exit 4") {
    CHECK(run({"fidelity", "-c", cfg, "--set", "Omega_eff=60 kHz_x2pi"}).code == 0);
    const Run r = run({"fidelity", "-c", cfg, "--set", "Omega_eff=60 kHz_x2pi", "--strict"});
    CHECK(r.code == 4);
    CHECK_FALSE(r.out.empty());
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(run({"sweep", "-c", cfg, "--param", "Omega_eff", "--values", "1.7,60", "--unit", "kHz_x2pi", "--strict"}).code ==
          4);
}

TEST_CASE("validate-config names the offending field") {
    const fs::path bad = scratch_file("bad.conf", "omega_b = 200 Hz_x2pi\nN = 3e6\nomega_a = 0 MHz_x2pi\n"
                                                  "Omega_eff = 1.7 kHz_x2pi\n");
    const Run r = run({"validate-config", "--config", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("omega_a") != std::string::npos);
    fs::remove(bad);

    const Run ok = run({"validate-config", "--config", cfg});
    CHECK(ok.code == 0);
    CHECK(ok.out == qtweezer::to_text(qtweezer::testing::baseline()));
}

TEST_CASE("config errors exit 2") {
    CHECK(run({"fidelity", "-c", "/nonexistent/file.conf"}).code == 2);
    CHECK(run({"fidelity", "-c", cfg, "--set", "bogus=1"}).code == 2);
    CHECK(run({"fidelity", "-c", cfg, "--set", "T=-1 nK"}).code == 2);
    CHECK(run({"fidelity"}).code == 2);
    CHECK(run({"frobnicate", "-c", cfg}).code == 2);
    CHECK(run({"fidelity", "-c", cfg, "--format", "xml"}).code == 2);
    CHECK(run({"sweep", "-c", cfg, "--param", "mass", "--range", "0:1:3"}).code == 2);
    CHECK(run({"sweep", "-c", cfg, "--param", "theta"}).code == 2);
    CHECK(run({"sweep", "-c", cfg, "--param", "theta", "--range", "1:2"}).code == 2);
    CHECK(run({"sweep", "-c", cfg, "--param", "theta", "--values", "1,1"}).code == 2);
    const Run r = run({"fidelity", "-c", cfg, "--set", "T=-1 nK"});
    CHECK(r.err.find("T:") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("duplicate override keys are an error, distinct keys commute") {
    const Run dup = run({"fidelity", "-c", cfg, "--set", "T=1 nK", "--set", "T=2 nK"});
    CHECK(dup.code == 2);
    CHECK(dup.err.find("duplicate") != std::string::npos);

    const Run a = run({"fidelity", "-c", cfg, "--set", "T=100 nK", "--set", "g_ab_over_g_b=1.2", "--set", "theta=pi/3"});
    const Run b = run({"fidelity", "-c", cfg, "--set", "theta=pi/3", "--set", "T=100 nK", "--set", "g_ab_over_g_b=1.2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("output file receives the data") {
    const fs::path p = fs::temp_directory_path() / "qtweezer_cli_out.csv";
    const Run r = run({"modes", "-c", cfg, "--set", "j_max=3", "-f", "csv", "-o", p.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().rfind("# omega", 0) == 0);
    fs::remove(p);
}

TEST_CASE("modes with couplings") {
    const Run r = run({"modes", "-c", cfg, "--set", "j_max=4", "--set", "ell=0,2", "--couplings", "-f", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["modes"].size() == 8);
    CHECK(j["modes"][0].contains("alpha_z"));
}

TEST_CASE("optimize") {
    const Run r = run({"optimize", "-c", cfg});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["g_ab_over_g_b"].get<double>() == doctest::Approx(0.98235).epsilon(1e-4));
    CHECK(run({"optimize", "-c", cfg, "--lo", "2", "--hi", "1"}).code == 2);
}

TEST_CASE("oracle-check") {
    const Run r = run({"oracle-check", "-c", cfg, "--modes", "2"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["converged"] == true);
    CHECK(j["fitted_order"].get<double>() > 2.0);
    CHECK(run({"oracle-check", "-c", cfg, "--modes", "4"}).code == 2);
    CHECK(run({"oracle-check", "-c", cfg, "--lambdas", "0.1,0.2"}).code == 2);
    CHECK(run({"oracle-check", "-c", cfg, "--modes", "3", "--n-max", "15"}).code == 2);
}

TEST_CASE("figure preset and basis convergence") {
    const Run fig = run({"sweep", "-c", cfg, "--figure", "2b"});
    CHECK(fig.code == 0);
    const auto t = qtweezer::sweep_from_csv(fig.out);
    CHECK(t.rows.size() == 4 * 41);
    CHECK(run({"sweep", "-c", cfg, "--figure", "2b", "--param", "theta", "--values", "1"}).code == 2);

    const Run conv = run({"sweep", "-c", cfg, "--param", "j_max", "--values", "100,250,500"});
    CHECK(conv.code == 0);
    CHECK(conv.out.rfind("j_max,g,increment,relative,converged\n", 0) == 0);
}

TEST_CASE("help") {
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("oracle-check") != std::string::npos);
}
