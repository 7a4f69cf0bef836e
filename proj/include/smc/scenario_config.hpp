#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smc/scenarios.hpp"

namespace smc {

/// Scenario-file problem with enough context to point at the offending spot.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line = 0, std::string key = {})
        : std::runtime_error(build(message, line, key)), line_(line), key_(std::move(key)) {}
    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    static std::string build(const std::string& message, int line, const std::string& key);
    int line_;
    std::string key_;
};

/// A fully materialized scenario: models, controller, and run parameters.
/// The file format is flat key = value text under [section] headers; every
/// key, unit and constraint is listed in scenarios/SCHEMA.txt.
struct Scenario {
    BenchmarkCase bench;
    ControllerConfig cfg;
    std::vector<double> x0;
    double dt = 0.0;  // 0 = apply the default_dt rule
    double t_end = 0.0;
    double tail_fraction = 0.4;
    std::string csv_path;
    std::string report_path;
    std::string envelope_csv_path;
    std::string region_csv_path;
    std::string name;
};

/// Parse a scenario from text. Never crashes on malformed input: any byte
/// stream yields either a Scenario or a ConfigError.
Scenario parse_scenario(std::string_view text, std::string_view origin);

/// Load and parse a scenario file.
Scenario load_scenario(const std::string& path);

}  // namespace smc
