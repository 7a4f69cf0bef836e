#include "smc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smc/csv.hpp"

namespace smc {

namespace {

std::optional<std::size_t> first_reach_index(const TrajectoryLog& log, double tol) {
    for (std::size_t k = 0; k < log.rows.size(); ++k) {
        if (std::abs(log.rows[k].s_phi) <= tol) return k;
    }
    return std::nullopt;
}

}  // namespace

ReachRecord check_reaching(const TrajectoryLog& log, double eta, double tol) {
    if (log.rows.empty()) throw std::invalid_argument("check_reaching: empty log");
    if (!(eta > 0.0)) throw std::invalid_argument("check_reaching: eta must be > 0");
    if (tol < 0.0) throw std::invalid_argument("check_reaching: tol must be >= 0");

    ReachRecord rec;
    rec.tol = tol;
    const double s0 = std::abs(log.rows.front().s_phi);
    rec.t_reach_bound = s0 / eta;

    const auto reach = first_reach_index(log, tol);
    const std::size_t envelope_end = reach.value_or(log.rows.size());
    rec.envelope_max_violation = 0.0;
    for (std::size_t k = 0; k < envelope_end; ++k) {
        const double envelope = s0 - eta * log.time(k);
        rec.envelope_max_violation =
            std::max(rec.envelope_max_violation, std::abs(log.rows[k].s_phi) - envelope);
    }
    if (reach) rec.t_reach_observed = log.time(*reach);

    rec.pass = reach.has_value() && *rec.t_reach_observed <= rec.t_reach_bound + log.dt &&
               rec.envelope_max_violation <= tol;
    return rec;
}

LyapunovRecord check_lyapunov(const TrajectoryLog& log, double eta, double tol) {
    if (log.rows.size() < 2) throw std::invalid_argument("check_lyapunov: need >= 2 rows");
    if (!(eta > 0.0)) throw std::invalid_argument("check_lyapunov: eta must be > 0");

    LyapunovRecord rec;
    rec.tol = tol;
    rec.max_violation = 0.0;
    for (std::size_t k = 0; k + 1 < log.rows.size(); ++k) {
        const TrajectoryRow& a = log.rows[k];
        const TrajectoryRow& b = log.rows[k + 1];
        if (a.s_phi == 0.0 || b.s_phi == 0.0) continue;  // inside the layer
        const double vdot = (b.V - a.V) / log.dt;
        rec.max_violation = std::max(rec.max_violation, vdot + eta * std::abs(a.s_phi));
        ++rec.samples;
    }
    rec.pass = rec.max_violation <= tol;
    return rec;
}

LyapunovRecord check_lyapunov(const TrajectoryLog& log, double eta) {
    if (log.rows.size() < 2) throw std::invalid_argument("check_lyapunov: need >= 2 rows");
    // The continuous inequality is only O(dt)-representable on the grid; the
    // discretization excess is bounded by the sdot^2 scale of the run.
    double max_sdot_sq = 0.0;
    for (std::size_t k = 0; k + 1 < log.rows.size(); ++k) {
        const double sdot = (log.rows[k + 1].s - log.rows[k].s) / log.dt;
        max_sdot_sq = std::max(max_sdot_sq, sdot * sdot);
    }
    return check_lyapunov(log, eta, max_sdot_sq * log.dt);
}

InvarianceRecord check_invariance(const TrajectoryLog& log, double phi, double rel_tol) {
    if (log.rows.empty()) throw std::invalid_argument("check_invariance: empty log");
    InvarianceRecord rec;
    rec.tol = phi * rel_tol;
    const auto reach = first_reach_index(log, 0.0);
    if (!reach) {
        rec.max_abs_s_phi = std::abs(log.rows.back().s_phi);
        rec.pass = false;  // never reached the layer at all
        return rec;
    }
    rec.max_abs_s_phi = 0.0;
    for (std::size_t k = *reach; k < log.rows.size(); ++k) {
        rec.max_abs_s_phi = std::max(rec.max_abs_s_phi, std::abs(log.rows[k].s_phi));
    }
    rec.pass = rec.max_abs_s_phi <= rec.tol;
    return rec;
}

SteadyStateRecord check_steady_state(const TrajectoryLog& log, const ConvergenceRegion& corrected,
                                     const ConvergenceRegion& slotine, double tail_fraction,
                                     double rel_tol) {
    if (log.rows.empty()) throw std::invalid_argument("check_steady_state: empty log");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
        throw std::invalid_argument("check_steady_state: tail_fraction must be in (0,1)");
    }
    const auto n = static_cast<std::size_t>(corrected.surface.order_n);
    if (log.rows.front().error.size() != n) {
        throw std::invalid_argument("check_steady_state: log order does not match region order");
    }

    const std::size_t rows = log.rows.size();
    const double t_end = log.time(rows - 1);

    // Tail gate: last tail_fraction of the run, not earlier than the observed
    // reach time plus a 5/lambda settling margin.
    const auto reach = first_reach_index(log, 0.0);
    if (!reach) {
        throw std::runtime_error(
            "check_steady_state: trajectory never entered the boundary layer; increase t_end");
    }
    const double t_gate = log.time(*reach) + 5.0 / corrected.surface.lambda;
    std::size_t tail_begin =
        static_cast<std::size_t>(std::ceil((1.0 - tail_fraction) * static_cast<double>(rows - 1)));
    while (tail_begin < rows && log.time(tail_begin) < t_gate) ++tail_begin;
    if (tail_begin >= rows) {
        std::ostringstream msg;
        msg << "check_steady_state: tail window empty (gate at t = " << t_gate
            << ", run ends at t = " << t_end << "); increase t_end";
        throw std::runtime_error(msg.str());
    }

    SteadyStateRecord rec;
    rec.tail_begin = tail_begin;
    rec.rel_tol = rel_tol;
    rec.corrected_bounds = corrected.per_derivative_bounds;
    rec.slotine_bounds = slotine.per_derivative_bounds;
    rec.max_abs_error.assign(n, 0.0);
    rec.max_abs_s = 0.0;
    for (std::size_t k = tail_begin; k < rows; ++k) {
        const TrajectoryRow& row = log.rows[k];
        for (std::size_t i = 0; i < n; ++i) {
            rec.max_abs_error[i] = std::max(rec.max_abs_error[i], std::abs(row.error[i]));
        }
        rec.max_abs_s = std::max(rec.max_abs_s, std::abs(row.s));
    }
    rec.corrected_pass = true;
    rec.slotine_pass = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (rec.max_abs_error[i] > rec.corrected_bounds[i] * (1.0 + rel_tol)) {
            rec.corrected_pass = false;
        }
        if (rec.max_abs_error[i] > rec.slotine_bounds[i] * (1.0 + rel_tol)) {
            rec.slotine_pass = false;
        }
    }
    return rec;
}

ConvergenceReport make_report(const TrajectoryLog& log, const ControllerConfig& cfg,
                              const std::string& scenario_name, const ReportTolerances& tol) {
    ConvergenceReport report;
    report.scenario = scenario_name;
    report.smoothing = cfg.smoothing;
    report.smoothing_exact_outside_layer = cfg.smoothing != SmoothingKind::HyperbolicTangent;
    report.tolerances = tol;
    report.reach = check_reaching(log, cfg.eta, tol.reach);
    report.lyapunov = check_lyapunov(log, cfg.eta);
    report.invariance = check_invariance(log, cfg.phi, tol.invariance_rel);
    report.steady_state =
        check_steady_state(log, region(cfg.surface, cfg.phi), slotine_region(cfg.surface, cfg.phi),
                           tol.tail_fraction, tol.steady_rel);
    return report;
}

namespace {

const char* pass_str(bool pass) { return pass ? "pass" : "FAIL"; }

std::string observed_str(const std::optional<double>& t) {
    return t ? format_double(*t) : std::string("never");
}

}  // namespace

std::string report_text(const ConvergenceReport& r) {
    std::ostringstream out;
    out << "convergence report: " << r.scenario << "\n";
    out << "  smoothing: " << to_string(r.smoothing)
        << (r.smoothing_exact_outside_layer
                ? " (exact relay outside the layer)"
                : " (approximates the relay outside the layer; reaching-theorem"
                  " precondition holds only approximately)")
        << "\n";
    out << "  reaching   [" << pass_str(r.reach.pass) << "]  observed "
        << observed_str(r.reach.t_reach_observed) << " s, bound " << r.reach.t_reach_bound
        << " s, envelope violation " << r.reach.envelope_max_violation << " (tol " << r.reach.tol
        << ")\n";
    out << "  lyapunov   [" << pass_str(r.lyapunov.pass) << "]  max V_dot + eta|s_phi| = "
        << r.lyapunov.max_violation << " over " << r.lyapunov.samples << " samples (tol "
        << r.lyapunov.tol << ")\n";
    out << "  invariance [" << pass_str(r.invariance.pass) << "]  max |s_phi| after reach = "
        << r.invariance.max_abs_s_phi << " (tol " << r.invariance.tol << ")\n";
    out << "  steady     [" << pass_str(r.steady_state.corrected_pass)
        << "]  tail from row " << r.steady_state.tail_begin << ", max |s| = "
        << r.steady_state.max_abs_s << "\n";
    out << "    i   max|err_i|        corrected bound   classical bound\n";
    for (std::size_t i = 0; i < r.steady_state.max_abs_error.size(); ++i) {
        out << "    " << i << "   " << r.steady_state.max_abs_error[i] << "   "
            << r.steady_state.corrected_bounds[i] << "   " << r.steady_state.slotine_bounds[i]
            << "\n";
    }
    out << "    classical-bound verdict (informational): "
        << (r.steady_state.slotine_pass ? "holds" : "violated") << "\n";
    out << "  overall: " << (r.all_pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string report_keyvalue(const ConvergenceReport& r) {
    std::ostringstream out;
    auto put = [&out](const std::string& key, const std::string& value) {
        out << key << "=" << value << "\n";
    };
    auto put_d = [&](const std::string& key, double v) { put(key, format_double(v)); };
    auto put_b = [&](const std::string& key, bool v) { put(key, v ? "true" : "false"); };

    put("scenario", r.scenario);
    put("smoothing", to_string(r.smoothing));
    put_b("smoothing.exact_outside_layer", r.smoothing_exact_outside_layer);
    put("reach.observed", observed_str(r.reach.t_reach_observed));
    put_d("reach.bound", r.reach.t_reach_bound);
    put_d("reach.envelope_max_violation", r.reach.envelope_max_violation);
    put_d("reach.tol", r.reach.tol);
    put_b("reach.pass", r.reach.pass);
    put_d("lyapunov.max_violation", r.lyapunov.max_violation);
    put_d("lyapunov.tol", r.lyapunov.tol);
    put("lyapunov.samples", std::to_string(r.lyapunov.samples));
    put_b("lyapunov.pass", r.lyapunov.pass);
    put_d("invariance.max_abs_s_phi", r.invariance.max_abs_s_phi);
    put_d("invariance.tol", r.invariance.tol);
    put_b("invariance.pass", r.invariance.pass);
    put("steady.tail_begin", std::to_string(r.steady_state.tail_begin));
    put_d("steady.max_abs_s", r.steady_state.max_abs_s);
    put_d("steady.rel_tol", r.steady_state.rel_tol);
    for (std::size_t i = 0; i < r.steady_state.max_abs_error.size(); ++i) {
        const std::string suffix = std::to_string(i);
        put_d("steady.max_abs_err_" + suffix, r.steady_state.max_abs_error[i]);
        put_d("steady.corrected_bound_" + suffix, r.steady_state.corrected_bounds[i]);
        put_d("steady.slotine_bound_" + suffix, r.steady_state.slotine_bounds[i]);
    }
    put_b("steady.corrected_pass", r.steady_state.corrected_pass);
    put_b("steady.slotine_pass", r.steady_state.slotine_pass);
    put_b("overall.pass", r.all_pass());
    return out.str();
}

}  // namespace smc
