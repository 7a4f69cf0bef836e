#include "smc/controller.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smc {

namespace {

std::string describe_state(std::span<const double> state) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i) out << ", ";
        out << state[i];
    }
    out << "]";
    return out.str();
}

double eval_f_hat(const UncertaintyModel& u, std::span<const double> state) {
    const double f = u.f_hat(state);
    if (!std::isfinite(f)) {
        throw std::runtime_error("controller: f_hat returned non-finite value " +
                                 std::to_string(f) + " at state " + describe_state(state));
    }
    return f;
}

double eval_f_bound(const UncertaintyModel& u, std::span<const double> state) {
    const double F = u.f_bound(state);
    if (!std::isfinite(F) || F < 0.0) {
        throw std::runtime_error("controller: f_bound must be finite and >= 0, got " +
                                 std::to_string(F) + " at state " + describe_state(state));
    }
    return F;
}

void require_sizes(const ControllerConfig& cfg, std::span<const double> state,
                   const DesiredState& desired) {
    const auto n = static_cast<std::size_t>(cfg.surface.order_n);
    if (state.size() != n || desired.vector.size() != n) {
        throw std::invalid_argument("controller: state/desired length mismatch (n = " +
                                    std::to_string(n) + ", state = " +
                                    std::to_string(state.size()) + ", desired = " +
                                    std::to_string(desired.vector.size()) + ")");
    }
}

}  // namespace

UncertaintyModel make_uncertainty(StateFn f_hat, StateFn f_bound, double b_min, double b_max) {
    if (!f_hat || !f_bound) {
        throw std::invalid_argument("make_uncertainty: f_hat and f_bound must be callable");
    }
    if (!(std::isfinite(b_min) && std::isfinite(b_max) && 0.0 < b_min && b_min <= b_max)) {
        throw std::invalid_argument("make_uncertainty: need 0 < b_min <= b_max, got b_min = " +
                                    std::to_string(b_min) + ", b_max = " + std::to_string(b_max));
    }
    UncertaintyModel model;
    model.f_hat = std::move(f_hat);
    model.f_bound = std::move(f_bound);
    model.b_min = b_min;
    model.b_max = b_max;
    model.b_hat = std::sqrt(b_max * b_min);
    model.beta = std::sqrt(b_max / b_min);
    return model;
}

ControllerConfig make_controller(SurfaceSpec surface, UncertaintyModel uncertainty, double eta,
                                 double phi, SmoothingKind smoothing, double gain_safety) {
    if (!(std::isfinite(eta) && eta > 0.0)) {
        throw std::invalid_argument("make_controller: eta must be > 0, got " + std::to_string(eta));
    }
    if (!(std::isfinite(phi) && phi > 0.0)) {
        throw std::invalid_argument("make_controller: phi must be > 0, got " + std::to_string(phi));
    }
    if (!(std::isfinite(gain_safety) && gain_safety > 0.0)) {
        throw std::invalid_argument("make_controller: gain_safety must be > 0, got " +
                                    std::to_string(gain_safety));
    }
    ControllerConfig cfg;
    cfg.surface = std::move(surface);
    cfg.uncertainty = std::move(uncertainty);
    cfg.eta = eta;
    cfg.phi = phi;
    cfg.smoothing = smoothing;
    cfg.gain_safety = gain_safety;
    return cfg;
}

double equivalent_control(const ControllerConfig& cfg, std::span<const double> state,
                          const DesiredState& desired) {
    require_sizes(cfg, state, desired);
    const double f_hat = eval_f_hat(cfg.uncertainty, state);
    double cbar_err = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        cbar_err += cfg.surface.coeffs_cbar[k] * (state[k] - desired.vector[k]);
    }
    return (-f_hat + desired.nth_derivative - cbar_err) / cfg.uncertainty.b_hat;
}

double robust_gain(const ControllerConfig& cfg, std::span<const double> state,
                   const DesiredState& desired) {
    const double u_eq = equivalent_control(cfg, state, desired);
    const double F = eval_f_bound(cfg.uncertainty, state);
    const UncertaintyModel& un = cfg.uncertainty;
    const double K =
        (un.beta / un.b_hat * (cfg.eta + F) + (un.beta - 1.0) * std::abs(u_eq)) * cfg.gain_safety;
    return K;
}

ControlOutput control(const ControllerConfig& cfg, std::span<const double> state,
                      const DesiredState& desired) {
    require_sizes(cfg, state, desired);
    const double f_hat = eval_f_hat(cfg.uncertainty, state);
    const double F = eval_f_bound(cfg.uncertainty, state);

    double s = 0.0;
    double cbar_err = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const double e = state[k] - desired.vector[k];
        s += cfg.surface.coeffs_c[k] * e;
        cbar_err += cfg.surface.coeffs_cbar[k] * e;
    }

    const UncertaintyModel& un = cfg.uncertainty;
    const double u_eq = (-f_hat + desired.nth_derivative - cbar_err) / un.b_hat;
    const double K =
        (un.beta / un.b_hat * (cfg.eta + F) + (un.beta - 1.0) * std::abs(u_eq)) * cfg.gain_safety;

    ControlOutput out;
    out.diag.s = s;
    out.diag.s_phi = boundary_distance(s, cfg.phi);
    out.diag.K = K;
    out.diag.u_eq = u_eq;
    out.u = u_eq - K * evaluate(cfg.smoothing, s, cfg.phi);
    return out;
}

}  // namespace smc
