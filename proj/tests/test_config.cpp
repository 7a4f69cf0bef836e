#include <doctest.h>

#include <string>

#include "smc/csv.hpp"
#include "smc/scenario_config.hpp"

using namespace smc;

namespace {

std::string fixture(const std::string& name) {
    return std::string(SMC_SCENARIO_DIR) + "/" + name;
}

const char* kMinimalConfig = R"cfg(
[plant]
kind = chain3
dist_amp = 0.4
b = 1.0

[uncertainty]
b_min = 1.0
b_max = 1.0

[controller]
n = 3
lambda = 1.5
eta = 0.8
phi = 0.15
smoothing = sat

[trajectory]
kind = sinusoid
amplitude = 0.5
omega = 1.0

[run]
x0 = 0.1 0.0 0.0
t_end = 10.0
)cfg";

}  // namespace

TEST_CASE("shipped fixtures parse and validate") {
    for (const std::string name :
         {"duffing_n2.cfg", "chain_n3.cfg", "vargain_n2.cfg", "undergained_chain.cfg"}) {
        CAPTURE(name);
        const Scenario sc = load_scenario(fixture(name));
        CHECK(sc.cfg.surface.order_n == sc.bench.plant.order_n);
        CHECK(static_cast<int>(sc.x0.size()) == sc.bench.plant.order_n);
        CHECK(sc.dt > 0.0);
        CHECK(sc.t_end > 0.0);
    }
}

TEST_CASE("minimal config applies documented defaults") {
    const Scenario sc = parse_scenario(kMinimalConfig, "inline");
    CHECK(sc.cfg.gain_safety == 1.0);
    CHECK(sc.tail_fraction == 0.4);
    CHECK(sc.dt == 0.0);  // deferred to the default_dt rule
    CHECK(sc.name == "chain_n3");
}

TEST_CASE("phi = 0 is rejected at parse time naming the rule") {
    std::string text = kMinimalConfig;
    const auto pos = text.find("phi = 0.15");
    text.replace(pos, 10, "phi = 0.0\n");
    try {
        parse_scenario(text, "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        CHECK(what.find("controller.phi") != std::string::npos);
        CHECK(what.find("> 0") != std::string::npos);
        CHECK(e.line() > 0);
    }
}

TEST_CASE("field-precise rejection of structural problems") {
    // Order mismatch between controller and plant.
    std::string text = kMinimalConfig;
    text.replace(text.find("n = 3"), 5, "n = 2");
    CHECK_THROWS_AS(parse_scenario(text, "inline"), ConfigError);

    // x0 arity mismatch.
    std::string short_x0 = kMinimalConfig;
    short_x0.replace(short_x0.find("x0 = 0.1 0.0 0.0"), 16, "x0 = 0.1 0.0\n\n\n");
    CHECK_THROWS_AS(parse_scenario(short_x0, "inline"), ConfigError);

    // Unknown keys are named.
    CHECK_THROWS_AS(parse_scenario(std::string(kMinimalConfig) + "typo_key = 1\n", "inline"),
                    ConfigError);

    // Missing required key.
    std::string missing = kMinimalConfig;
    missing.replace(missing.find("eta = 0.8"), 9, "#eta = 0.");
    CHECK_THROWS_AS(parse_scenario(missing, "inline"), ConfigError);
}

TEST_CASE("parsing is total: garbage bytes yield ConfigError, never a crash") {
    const std::string garbage1 = "\x00\xff\xfe garbage [   \n = = = \n";
    CHECK_THROWS_AS(parse_scenario(garbage1, "inline"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("key_without_section = 1\n", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[plant\nkind = duffing\n", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[plant]\nkind duffing\n", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[plant]\nkind = nosuch\n", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("", "inline"), ConfigError);
    std::string binary;
    for (int i = 0; i < 256; ++i) binary.push_back(static_cast<char>(i));
    CHECK_THROWS_AS(parse_scenario(binary, "inline"), ConfigError);
}

TEST_CASE("duplicate keys are rejected with the line number") {
    std::string text = std::string(kMinimalConfig) + "\n[run]\nt_end = 5.0\n";
    try {
        parse_scenario(text, "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
        CHECK(e.key() == "run.t_end");
    }
}

TEST_CASE("vargain gain bracket validation") {
    const char* bad = R"cfg(
[plant]
kind = vargain
k_lin = 1.0
c_true = 0.8
b0 = 1.2
b_ripple = 0.35
[uncertainty]
c_nominal = 0.5
b_min = 1.0
b_max = 1.2
[controller]
n = 2
lambda = 2.0
eta = 0.6
phi = 0.08
smoothing = sat
[trajectory]
kind = sinusoid
amplitude = 0.6
omega = 1.2
[run]
x0 = 0.0 0.0
t_end = 5.0
)cfg";
    try {
        parse_scenario(bad, "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("b_min") != std::string::npos);
    }
}

TEST_CASE("format_double round-trips doubles exactly") {
    for (double v : {0.1, -3.0, 1.0 / 3.0, 1e-300, 12345.6789, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
