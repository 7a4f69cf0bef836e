// End-to-end exercises of every CLI subcommand against the shipped fixtures.
// Runs the real binary through std::system and inspects exit codes and files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = SMC_CLI_PATH;
const std::string kScenarioDir = SMC_SCENARIO_DIR;

/// Scratch path inside a per-process temp dir so test artifacts never land
/// in the source tree.
std::string tmp(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto path = std::filesystem::temp_directory_path() /
                    ("smc_cli_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
        return path;
    }();
    return (dir / name).string();
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run(const std::string& args) {
    const std::string out_path = tmp("cli_output.txt");
    const std::string command = kCli + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(command.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string fixture(const std::string& name) { return kScenarioDir + "/" + name; }

}  // namespace

TEST_CASE("simulate: shipped scenario exits 0 and writes the schema header") {
    const CommandResult r =
        run("simulate " + fixture("duffing_n2.cfg") + " --t-end 2.0 --out " + tmp("sim_a.csv"));
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(tmp("sim_a.csv"));
    CHECK(csv.rfind("t,x0,x1,xd0,xd1,s,s_phi,K,u,V\n", 0) == 0);
}

TEST_CASE("simulate: byte-identical CSV on repeated runs") {
    const std::string args =
        "simulate " + fixture("vargain_n2.cfg") + " --t-end 3.0 --out " + tmp("sim_det_");
    CHECK(run(args + "1.csv").exit_code == 0);
    CHECK(run(args + "2.csv").exit_code == 0);
    CHECK(slurp(tmp("sim_det_1.csv")) == slurp(tmp("sim_det_2.csv")));
}

TEST_CASE("simulate: envelope and region side outputs") {
    const CommandResult r = run("simulate " + fixture("duffing_n2.cfg") +
                                " --t-end 2.0 --out " + tmp("sim_b.csv") + " --envelope-csv " +
                                tmp("env.csv") + " --region-csv " + tmp("reg.csv"));
    CHECK(r.exit_code == 0);
    CHECK(slurp(tmp("env.csv")).rfind("t,abs_s_phi,envelope\n", 0) == 0);
    const std::string region = slurp(tmp("reg.csv"));
    CHECK(region.rfind("shape,idx,e0,e1\n", 0) == 0);
    CHECK(region.find("box,") != std::string::npos);
    CHECK(region.find("layer,") != std::string::npos);
    CHECK(region.find("region,") != std::string::npos);
}

TEST_CASE("simulate: phi = 0 config is rejected at parse time naming the rule") {
    const std::string bad_path = tmp("bad_phi.cfg");
    {
        std::string text = slurp(fixture("duffing_n2.cfg"));
        const auto pos = text.find("phi = 0.1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 9, "phi = 0.0");
        std::ofstream out(bad_path, std::ios::binary);
        out << text;
    }
    const CommandResult r = run("simulate " + bad_path);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("controller.phi") != std::string::npos);
    CHECK(r.output.find("> 0") != std::string::npos);
}

TEST_CASE("simulate: missing config file is a usage error") {
    const CommandResult r = run("simulate no_such_file.cfg");
    CHECK(r.exit_code == 2);
}

TEST_CASE("simulate: omitted dt falls back to the documented step rule") {
    const std::string no_dt_path = tmp("no_dt.cfg");
    {
        std::string text = slurp(fixture("duffing_n2.cfg"));
        const auto pos = text.find("dt = 1e-3\n");
        REQUIRE(pos != std::string::npos);
        text.erase(pos, 10);
        std::ofstream out(no_dt_path, std::ios::binary);
        out << text;
    }
    const CommandResult r =
        run("simulate " + no_dt_path + " --t-end 1.0 --out " + tmp("no_dt.csv"));
    CHECK(r.exit_code == 0);
    // The rule caps the step at 1e-3, so one second needs >= 1000 rows.
    const std::string csv = slurp(tmp("no_dt.csv"));
    const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(rows >= 1001);
    CHECK(rows <= 100001);
}

TEST_CASE("verify-bounds: all shipped scenarios pass with exit 0") {
    for (const std::string name : {"duffing_n2.cfg", "chain_n3.cfg", "vargain_n2.cfg"}) {
        CAPTURE(name);
        const CommandResult r = run("verify-bounds " + fixture(name) + " --out " + tmp("verify_kv.txt"));
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("overall: PASS") != std::string::npos);
        const std::string kv = slurp(tmp("verify_kv.txt"));
        CHECK(kv.find("overall.pass=true") != std::string::npos);
        CHECK(kv.find("steady.slotine_bound_0=") != std::string::npos);
    }
}

TEST_CASE("simulate: violated modelling assumption is a runtime error, exit 3") {
    // Shrink F below the true disturbance: the online Assumption-1 check
    // fires as soon as |sin(x)| climbs past the dishonest bound.
    const std::string dishonest_path = tmp("dishonest_f.cfg");
    {
        std::string text = slurp(fixture("chain_n3.cfg"));
        const auto pos = text.find("f_scale = 1.05");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 14, "f_scale = 0.50");
        std::ofstream out(dishonest_path, std::ios::binary);
        out << text;
    }
    const CommandResult r = run("simulate " + dishonest_path);
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("Assumption 1") != std::string::npos);
}

TEST_CASE("verify-bounds: under-gained fixture fails with the lyapunov check named") {
    const CommandResult r = run("verify-bounds " + fixture("undergained_chain.cfg"));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("lyapunov   [FAIL]") != std::string::npos);
}

TEST_CASE("zeta-table: stated rows for n = 4") {
    const CommandResult r = run("zeta-table --n 4 --out " + tmp("zeta4.csv"));
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(tmp("zeta4.csv"));
    CHECK(csv == "i,zeta,two_pow_i\n0,1,1\n1,2,2\n2,6,4\n3,26,8\n");
    CHECK(r.output.find("diverge from index 2") != std::string::npos);
}

TEST_CASE("zeta-table: n = 0 is a usage error") {
    const CommandResult r = run("zeta-table --n 0");
    CHECK(r.exit_code == 2);
}

TEST_CASE("search-witness: prints the bound comparison and writes a trace") {
    const CommandResult r = run(
        "search-witness --n 3 --lambda 1 --phi 1 --i 2 --budget 1500 --seed 3 --jobs 2 "
        "--out " + tmp("witness.csv"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("best excursion") != std::string::npos);
    CHECK(r.output.find("classical bound") != std::string::npos);
    // Steady-tail driving cannot pass the classical bound here; the CLI
    // reports the measured gap.
    CHECK(r.output.find("not exceeded within budget") != std::string::npos);
    const std::string trace = slurp(tmp("witness.csv"));
    CHECK(trace.rfind("t,s,err0,err1,err2\n", 0) == 0);
}

TEST_CASE("search-witness: zero budget is a usage error") {
    const CommandResult r = run("search-witness --n 3 --lambda 1 --phi 1 --i 2 --budget 0");
    CHECK(r.exit_code == 2);
}

TEST_CASE("unknown subcommand and missing arguments are usage errors") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("zeta-table").exit_code == 2);
    CHECK(run("").exit_code == 2);
}
