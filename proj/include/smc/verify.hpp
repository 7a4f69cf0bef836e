#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "smc/bounds.hpp"
#include "smc/plant.hpp"

namespace smc {

/// Finite-time reaching verdict. The bound is |s_phi(0)| / eta exactly; the
/// observed time is the first grid point with |s_phi| <= tol, and every
/// pre-reach sample must sit under the straight-line envelope
/// |s_phi(0)| - eta t (+ tol).
struct ReachRecord {
    std::optional<double> t_reach_observed;
    double t_reach_bound = 0.0;
    double envelope_max_violation = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Discrete Lyapunov decrement verdict: max over eligible sample pairs of
/// (V_{k+1} - V_k)/dt + eta |s_phi,k|, both samples outside the layer.
struct LyapunovRecord {
    double max_violation = 0.0;
    double tol = 0.0;
    std::size_t samples = 0;
    bool pass = false;
};

/// Layer invariance after first reach: max |s_phi| over the remaining rows.
struct InvarianceRecord {
    double max_abs_s_phi = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Tail-window containment verdict against the corrected and the classical
/// per-derivative bounds.
struct SteadyStateRecord {
    std::size_t tail_begin = 0;
    std::vector<double> max_abs_error;
    std::vector<double> corrected_bounds;
    std::vector<double> slotine_bounds;
    double max_abs_s = 0.0;
    double rel_tol = 0.0;
    bool corrected_pass = false;
    bool slotine_pass = false;
};

struct ReportTolerances {
    double reach = 1e-4;
    double invariance_rel = 1e-3;  // relative to phi
    double steady_rel = 1e-2;
    double tail_fraction = 0.4;
};

struct ConvergenceReport {
    std::string scenario;
    SmoothingKind smoothing = SmoothingKind::Saturation;
    /// Sign and Saturation behave exactly like the relay outside the layer
    /// (the precondition of the finite-time reaching theorem); the tanh
    /// variant only approximates it, so its verdicts carry this caveat.
    bool smoothing_exact_outside_layer = true;
    ReachRecord reach;
    LyapunovRecord lyapunov;
    InvarianceRecord invariance;
    SteadyStateRecord steady_state;
    ReportTolerances tolerances;

    /// Gate: corrected-bound checks only; the classical-bound column is
    /// informational and never fails a run.
    bool all_pass() const {
        return reach.pass && lyapunov.pass && invariance.pass && steady_state.corrected_pass;
    }
};

ReachRecord check_reaching(const TrajectoryLog& log, double eta, double tol);

/// Explicit-tolerance form.
LyapunovRecord check_lyapunov(const TrajectoryLog& log, double eta, double tol);
/// Default tolerance C * dt with C = max discrete |sdot|^2 from the log.
LyapunovRecord check_lyapunov(const TrajectoryLog& log, double eta);

InvarianceRecord check_invariance(const TrajectoryLog& log, double phi, double rel_tol);

/// Tail window = last tail_fraction of the run, additionally gated on the
/// observed reach time plus a 5/lambda settling margin. Throws when the
/// gated window is empty (run too short).
SteadyStateRecord check_steady_state(const TrajectoryLog& log, const ConvergenceRegion& corrected,
                                     const ConvergenceRegion& slotine, double tail_fraction,
                                     double rel_tol = 1e-2);

/// Run every checker on one log.
ConvergenceReport make_report(const TrajectoryLog& log, const ControllerConfig& cfg,
                              const std::string& scenario_name,
                              const ReportTolerances& tol = {});

/// Human-readable block.
std::string report_text(const ConvergenceReport& report);
/// Machine-readable key=value lines (schema documented in the README).
std::string report_keyvalue(const ConvergenceReport& report);

}  // namespace smc
