#include "smc/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace smc {

double sign_fn(double s) {
    if (s < 0.0) return -1.0;
    if (s > 0.0) return 1.0;
    return 0.0;
}

double evaluate(SmoothingKind kind, double s, double phi) {
    if (!(std::isfinite(phi) && phi > 0.0)) {
        throw std::invalid_argument("evaluate: phi must be a positive real, got " +
                                    std::to_string(phi));
    }
    switch (kind) {
        case SmoothingKind::Sign:
            return sign_fn(s);
        case SmoothingKind::Saturation: {
            const double ratio = s / phi;
            return std::abs(ratio) >= 1.0 ? sign_fn(s) : ratio;
        }
        case SmoothingKind::HyperbolicTangent:
            return std::tanh(s / phi);
    }
    throw std::logic_error("evaluate: unhandled smoothing kind");
}

std::optional<SmoothingKind> parse_smoothing(std::string_view text) {
    if (text == "sign") return SmoothingKind::Sign;
    if (text == "sat") return SmoothingKind::Saturation;
    if (text == "tanh") return SmoothingKind::HyperbolicTangent;
    return std::nullopt;
}

std::string to_string(SmoothingKind kind) {
    switch (kind) {
        case SmoothingKind::Sign: return "sign";
        case SmoothingKind::Saturation: return "sat";
        case SmoothingKind::HyperbolicTangent: return "tanh";
    }
    return "?";
}

}  // namespace smc
