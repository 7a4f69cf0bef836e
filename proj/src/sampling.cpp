#include "smc/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "smc/parallel.hpp"
#include "smc/rng.hpp"

namespace smc {

namespace {

struct DrawOutcome {
    double violation = 0.0;
};

/// One random draw of (state, desired, f in the F-tube, b in [b_min,b_max]),
/// shifted outside the layer, evaluated against the sliding condition with
/// the minimal admissible gain and the Sign law.
DrawOutcome evaluate_draw(const GainSweepParams& p, std::uint64_t index) {
    SplitMix64 rng(derive_stream_seed(p.seed, index));
    const auto n = static_cast<std::size_t>(p.cfg.surface.order_n);

    std::vector<double> state(n);
    DesiredState desired;
    desired.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        state[i] = rng.uniform(p.state_lo[i], p.state_hi[i]);
        desired.vector[i] = rng.uniform(p.desired_lo[i], p.desired_hi[i]);
    }
    desired.nth_derivative = rng.uniform(-p.desired_nth_max, p.desired_nth_max);
    const double eps = rng.uniform(-1.0, 1.0);
    const double b_draw = rng.uniform(p.cfg.uncertainty.b_min, p.cfg.uncertainty.b_max);

    // The sliding condition only applies outside the layer; the last error
    // component carries surface coefficient exactly 1, so shifting it moves s
    // to 2 phi without touching the rest of the draw.
    double s = 0.0;
    std::vector<double> error(n);
    for (std::size_t i = 0; i < n; ++i) {
        error[i] = state[i] - desired.vector[i];
        s += p.cfg.surface.coeffs_c[i] * error[i];
    }
    if (std::abs(s) <= p.cfg.phi) {
        const double shift = 2.0 * p.cfg.phi - s;
        state[n - 1] += shift;
        error[n - 1] += shift;
        s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p.cfg.surface.coeffs_c[i] * error[i];
    }

    const ControlOutput out = control(p.cfg, state, desired);
    const double f_draw = p.cfg.uncertainty.f_hat(state) - eps * p.cfg.uncertainty.f_bound(state);

    double cbar_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) cbar_err += p.cfg.surface.coeffs_cbar[i] * error[i];
    const double sdot = f_draw + b_draw * out.u - desired.nth_derivative + cbar_err;

    const double s_phi = out.diag.s_phi;
    return DrawOutcome{s_phi * sdot + p.cfg.eta * std::abs(s_phi)};
}

GainSweepResult reduce(const GainSweepParams& p, const std::vector<double>& violations) {
    GainSweepResult result;
    result.samples = p.samples;
    result.max_violation = violations.empty() ? 0.0 : violations[0];
    result.worst_index = 0;
    for (std::uint64_t i = 1; i < violations.size(); ++i) {
        if (violations[i] > result.max_violation) {
            result.max_violation = violations[i];
            result.worst_index = i;
        }
    }
    return result;
}

void validate(const GainSweepParams& p) {
    const auto n = static_cast<std::size_t>(p.cfg.surface.order_n);
    if (p.samples == 0) throw std::invalid_argument("gain_margin_sweep: samples must be > 0");
    if (p.state_lo.size() != n || p.state_hi.size() != n || p.desired_lo.size() != n ||
        p.desired_hi.size() != n) {
        throw std::invalid_argument("gain_margin_sweep: box bounds must have length n");
    }
    if (p.cfg.smoothing != SmoothingKind::Sign && p.cfg.smoothing != SmoothingKind::Saturation) {
        throw std::invalid_argument(
            "gain_margin_sweep: the sliding condition applies to the Sign/Saturation laws");
    }
}

}  // namespace

GainSweepResult gain_margin_sweep_serial(const GainSweepParams& p) {
    validate(p);
    std::vector<double> violations(p.samples);
    for (std::uint64_t i = 0; i < p.samples; ++i) violations[i] = evaluate_draw(p, i).violation;
    return reduce(p, violations);
}

GainSweepResult gain_margin_sweep(const GainSweepParams& p) {
    validate(p);
    std::vector<double> violations(p.samples);
    const int threads = resolve_thread_count(p.jobs);
    const auto count = static_cast<std::int64_t>(p.samples);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
        violations[static_cast<std::uint64_t>(i)] =
            evaluate_draw(p, static_cast<std::uint64_t>(i)).violation;
    }
    return reduce(p, violations);
}

}  // namespace smc
