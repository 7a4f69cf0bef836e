#include "smc/scenario_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace smc {

std::string ConfigError::build(const std::string& message, int line, const std::string& key) {
    std::ostringstream out;
    out << "config error";
    if (line > 0) out << " (line " << line << ")";
    if (!key.empty()) out << " [" << key << "]";
    out << ": " << message;
    return out.str();
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    mutable bool consumed = false;
};

/// Parsed key = value text grouped by [section]. Lookups are spelled
/// "section.key" so error messages can point at the exact field.
class ConfigMap {
public:
    ConfigMap(std::string_view text, std::string_view origin) : origin_(origin) {
        std::string section;
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(
                pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++line_no;
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

            line = strip(line);
            if (line.empty() || line.front() == '#') continue;
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) {
                    throw ConfigError("malformed section header '" + std::string(line) + "'",
                                      line_no);
                }
                section = std::string(strip(line.substr(1, line.size() - 2)));
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("expected key = value, got '" + clip(line) + "'", line_no);
            }
            if (section.empty()) {
                throw ConfigError("key before any [section] header", line_no);
            }
            const std::string key = section + "." + std::string(strip(line.substr(0, eq)));
            if (entries_.count(key)) {
                throw ConfigError("duplicate key", line_no, key);
            }
            entries_[key] = Entry{std::string(strip(line.substr(eq + 1))), line_no};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key) const {
        const Entry& e = find(key);
        return e.value;
    }

    double get_double(const std::string& key) const {
        const Entry& e = find(key);
        return to_double(e.value, key, e.line);
    }

    double get_double_or(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return get_double(key);
    }

    std::string get_string_or(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        return get_string(key);
    }

    long get_int(const std::string& key) const {
        const Entry& e = find(key);
        long result = 0;
        const char* begin = e.value.data();
        const char* end = begin + e.value.size();
        const auto [ptr, ec] = std::from_chars(begin, end, result);
        if (ec != std::errc() || ptr != end) {
            throw ConfigError("expected an integer, got '" + clip(e.value) + "'", e.line, key);
        }
        return result;
    }

    std::vector<double> get_doubles(const std::string& key) const {
        const Entry& e = find(key);
        std::vector<double> values;
        std::istringstream in(e.value);
        std::string token;
        while (in >> token) values.push_back(to_double(token, key, e.line));
        if (values.empty()) {
            throw ConfigError("expected one or more reals", e.line, key);
        }
        return values;
    }

    int line_of(const std::string& key) const { return find(key).line; }

    /// Reject typos: every key present must have been consumed by a getter.
    void check_unknown() const {
        for (const auto& [key, entry] : entries_) {
            if (!entry.consumed) {
                throw ConfigError("unknown key (see scenarios/SCHEMA.txt)", entry.line, key);
            }
        }
    }

private:
    static std::string_view strip(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    static std::string clip(std::string_view s) {
        return std::string(s.substr(0, 40));
    }

    static double to_double(const std::string& text, const std::string& key, int line) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("expected a finite real, got '" + clip(text) + "'", line, key);
        }
    }

    const Entry& find(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            throw ConfigError("missing required key", 0, key);
        }
        it->second.consumed = true;
        return it->second;
    }

    std::string origin_;
    std::map<std::string, Entry> entries_;
};

double require_positive(const ConfigMap& map, const std::string& key) {
    const double v = map.get_double(key);
    if (!(v > 0.0)) {
        throw ConfigError("must be > 0, got " + std::to_string(v), map.line_of(key), key);
    }
    return v;
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view origin) {
    const ConfigMap map(text, origin);
    Scenario sc;

    // --- plant + uncertainty ---------------------------------------------
    const std::string kind = map.get_string("plant.kind");
    int plant_order = 0;
    if (kind == "duffing") {
        DuffingParams p;
        p.a1_true = map.get_double("plant.a1_true");
        p.a2_true = map.get_double("plant.a2_true");
        p.b = require_positive(map, "plant.b");
        p.a1_nominal = map.get_double("uncertainty.a1_nominal");
        p.a2_nominal = map.get_double("uncertainty.a2_nominal");
        p.f_scale = map.get_double_or("uncertainty.f_scale", 1.0);
        p.f_margin = map.get_double_or("uncertainty.f_margin", 0.0);
        p.b_min = require_positive(map, "uncertainty.b_min");
        p.b_max = require_positive(map, "uncertainty.b_max");
        if (p.b < p.b_min || p.b > p.b_max) {
            throw ConfigError("plant gain b outside declared [b_min, b_max]",
                              map.line_of("uncertainty.b_min"), "uncertainty.b_min");
        }
        sc.bench.plant = make_duffing_plant(p);
        sc.bench.uncertainty = make_duffing_uncertainty(p);
        plant_order = 2;
    } else if (kind == "chain3") {
        Chain3Params p;
        p.dist_amp = map.get_double("plant.dist_amp");
        p.b = require_positive(map, "plant.b");
        p.f_scale = map.get_double_or("uncertainty.f_scale", 1.0);
        p.f_margin = map.get_double_or("uncertainty.f_margin", 0.0);
        p.b_min = require_positive(map, "uncertainty.b_min");
        p.b_max = require_positive(map, "uncertainty.b_max");
        if (p.b < p.b_min || p.b > p.b_max) {
            throw ConfigError("plant gain b outside declared [b_min, b_max]",
                              map.line_of("uncertainty.b_min"), "uncertainty.b_min");
        }
        sc.bench.plant = make_chain3_plant(p);
        sc.bench.uncertainty = make_chain3_uncertainty(p);
        plant_order = 3;
    } else if (kind == "vargain") {
        VarGainParams p;
        p.k_lin = map.get_double("plant.k_lin");
        p.c_true = map.get_double("plant.c_true");
        p.b0 = require_positive(map, "plant.b0");
        p.b_ripple = map.get_double("plant.b_ripple");
        p.c_nominal = map.get_double("uncertainty.c_nominal");
        p.f_scale = map.get_double_or("uncertainty.f_scale", 1.0);
        p.f_margin = map.get_double_or("uncertainty.f_margin", 0.0);
        p.b_min = require_positive(map, "uncertainty.b_min");
        p.b_max = require_positive(map, "uncertainty.b_max");
        if (!(std::abs(p.b_ripple) < 1.0)) {
            throw ConfigError("|b_ripple| must be < 1 to keep b(x) positive",
                              map.line_of("plant.b_ripple"), "plant.b_ripple");
        }
        if (p.b0 * (1.0 - std::abs(p.b_ripple)) < p.b_min ||
            p.b0 * (1.0 + std::abs(p.b_ripple)) > p.b_max) {
            throw ConfigError("declared [b_min, b_max] does not cover b0 (1 +/- b_ripple)",
                              map.line_of("uncertainty.b_min"), "uncertainty.b_min");
        }
        sc.bench.plant = make_vargain_plant(p);
        sc.bench.uncertainty = make_vargain_uncertainty(p);
        plant_order = 2;
    } else {
        throw ConfigError("unknown plant kind '" + kind + "' (duffing | chain3 | vargain)",
                          map.line_of("plant.kind"), "plant.kind");
    }

    // --- controller --------------------------------------------------------
    const long n = map.get_int("controller.n");
    if (n != plant_order) {
        throw ConfigError("controller order " + std::to_string(n) + " does not match plant '" +
                              kind + "' (order " + std::to_string(plant_order) + ")",
                          map.line_of("controller.n"), "controller.n");
    }
    const double lambda = require_positive(map, "controller.lambda");
    const double eta = require_positive(map, "controller.eta");
    const double phi = require_positive(map, "controller.phi");
    const double gain_safety = map.get_double_or("controller.gain_safety", 1.0);
    if (!(gain_safety > 0.0)) {
        throw ConfigError("must be > 0", map.line_of("controller.gain_safety"),
                          "controller.gain_safety");
    }
    const std::string smoothing_text = map.get_string("controller.smoothing");
    const auto smoothing = parse_smoothing(smoothing_text);
    if (!smoothing) {
        throw ConfigError("unknown smoothing '" + smoothing_text + "' (sign | sat | tanh)",
                          map.line_of("controller.smoothing"), "controller.smoothing");
    }
    sc.cfg = make_controller(make_surface(static_cast<int>(n), lambda), sc.bench.uncertainty, eta,
                             phi, *smoothing, gain_safety);

    // --- trajectory ---------------------------------------------------------
    const std::string traj_kind = map.get_string("trajectory.kind");
    if (traj_kind == "sinusoid") {
        sc.bench.trajectory = make_sinusoid(static_cast<int>(n),
                                            map.get_double("trajectory.amplitude"),
                                            require_positive(map, "trajectory.omega"));
    } else if (traj_kind == "smoothstep") {
        sc.bench.trajectory = make_smoothstep(static_cast<int>(n),
                                              map.get_double("trajectory.amplitude"),
                                              require_positive(map, "trajectory.rate"),
                                              map.get_double("trajectory.t0"));
    } else {
        throw ConfigError("unknown trajectory kind '" + traj_kind + "' (sinusoid | smoothstep)",
                          map.line_of("trajectory.kind"), "trajectory.kind");
    }

    // --- run -----------------------------------------------------------------
    sc.x0 = map.get_doubles("run.x0");
    if (static_cast<long>(sc.x0.size()) != n) {
        throw ConfigError("x0 needs " + std::to_string(n) + " components, got " +
                              std::to_string(sc.x0.size()),
                          map.line_of("run.x0"), "run.x0");
    }
    sc.t_end = require_positive(map, "run.t_end");
    sc.dt = map.has("run.dt") ? require_positive(map, "run.dt") : 0.0;
    sc.tail_fraction = map.get_double_or("run.tail_fraction", 0.4);
    if (!(sc.tail_fraction > 0.0 && sc.tail_fraction < 1.0)) {
        throw ConfigError("must be in (0, 1)", map.line_of("run.tail_fraction"),
                          "run.tail_fraction");
    }
    if (sc.dt > 0.0 && sc.t_end < sc.dt) {
        throw ConfigError("t_end must be >= dt", map.line_of("run.t_end"), "run.t_end");
    }

    // --- output (all optional) ------------------------------------------------
    sc.csv_path = map.get_string_or("output.csv", "");
    sc.report_path = map.get_string_or("output.report", "");
    sc.envelope_csv_path = map.get_string_or("output.envelope_csv", "");
    sc.region_csv_path = map.get_string_or("output.region_csv", "");

    sc.name = map.get_string_or("plant.name", sc.bench.plant.name);
    sc.bench.name = sc.name;
    map.check_unknown();
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

}  // namespace smc
