#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace smc {

/// Switching-smoothing function family used inside the boundary layer.
///
/// Sign is the ideal relay, Saturation matches the relay exactly outside the
/// layer, HyperbolicTangent is smooth everywhere but only approximates the
/// relay outside the layer (tail error <= 2 exp(-2|s|/phi)).
enum class SmoothingKind {
    Sign,
    Saturation,
    HyperbolicTangent,
};

/// Three-case sign: -1 for s < 0, 0 for s = 0, +1 for s > 0.
double sign_fn(double s);

/// Evaluate the smoothing function. All kinds share the (s, phi) signature;
/// Sign ignores the value of phi. Requires phi > 0; output is in [-1, 1].
double evaluate(SmoothingKind kind, double s, double phi);

/// CLI spelling ("sign" | "sat" | "tanh"); nullopt when unrecognized.
std::optional<SmoothingKind> parse_smoothing(std::string_view text);
std::string to_string(SmoothingKind kind);

}  // namespace smc
