#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smc/smoothing.hpp"
#include "smc/surface.hpp"

namespace smc {

/// Scalar function of the state vector (f_hat, F, f_true, b_true, ...).
using StateFn = std::function<double(std::span<const double>)>;

/// What the controller knows about the plant: a nominal model f_hat, a
/// pointwise mismatch bound F >= |f_hat - f|, and input-gain bounds
/// 0 < b_min <= b(x) <= b_max. b_hat and beta are derived:
///   b_hat = sqrt(b_max * b_min), beta = sqrt(b_max / b_min) >= 1.
struct UncertaintyModel {
    StateFn f_hat;
    StateFn f_bound;
    double b_min = 0.0;
    double b_max = 0.0;
    double b_hat = 0.0;
    double beta = 0.0;
};

/// Validates the gain bounds and fills in the derived b_hat and beta.
UncertaintyModel make_uncertainty(StateFn f_hat, StateFn f_bound, double b_min, double b_max);

/// Desired trajectory sample: [x_d, x_d', ..., x_d^(n-1)] plus x_d^(n).
struct DesiredState {
    std::vector<double> vector;
    double nth_derivative = 0.0;
};

/// Immutable controller configuration. gain_safety multiplies the minimal
/// admissible gain; 1.0 is the sharp default, values below 1 deliberately
/// violate the gain condition (used by the checker-sensitivity fixture).
struct ControllerConfig {
    SurfaceSpec surface;
    UncertaintyModel uncertainty;
    double eta = 0.0;
    double phi = 0.0;
    SmoothingKind smoothing = SmoothingKind::Saturation;
    double gain_safety = 1.0;
};

ControllerConfig make_controller(SurfaceSpec surface, UncertaintyModel uncertainty,
                                 double eta, double phi,
                                 SmoothingKind smoothing = SmoothingKind::Saturation,
                                 double gain_safety = 1.0);

/// Intermediate quantities captured alongside the applied input so that the
/// simulator logs exactly what the control law used.
struct ControlDiagnostics {
    double s = 0.0;
    double s_phi = 0.0;
    double K = 0.0;
    double u_eq = 0.0;
};

struct ControlOutput {
    double u = 0.0;
    ControlDiagnostics diag;
};

/// Model-based component: b_hat^-1 * (-f_hat(x) + x_d^(n) - cbar . err).
double equivalent_control(const ControllerConfig& cfg, std::span<const double> state,
                          const DesiredState& desired);

/// Minimal admissible switching gain (times gain_safety):
///   K = beta * b_hat^-1 * (eta + F(x)) + (beta - 1) * |equivalent_control|.
/// Strictly positive. Re-evaluated from the current state on every call.
double robust_gain(const ControllerConfig& cfg, std::span<const double> state,
                   const DesiredState& desired);

/// Full control input u = u_eq - K * smoothing(s, phi), with diagnostics.
/// With Saturation and |s| > phi the result matches the Sign variant
/// bit-for-bit on identical inputs.
ControlOutput control(const ControllerConfig& cfg, std::span<const double> state,
                      const DesiredState& desired);

}  // namespace smc
