#pragma once

#include <cstdint>
#include <vector>

#include "smc/controller.hpp"

namespace smc {

/// Randomized gain-sufficiency sweep. Each draw picks a state, a desired
/// state, a plant f inside the F-tube (f = f_hat - eps F, |eps| <= 1) and a
/// gain b inside [b_min, b_max], places the point outside the boundary layer,
/// applies the switching law with the minimal admissible gain, and evaluates
///   violation = s_phi * sdot + eta |s_phi|
/// against the true plant. The sliding condition demands violation <= 0.
struct GainSweepParams {
    ControllerConfig cfg;
    std::vector<double> state_lo;
    std::vector<double> state_hi;
    std::vector<double> desired_lo;
    std::vector<double> desired_hi;
    double desired_nth_max = 1.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 = all cores
};

struct GainSweepResult {
    double max_violation = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t worst_index = 0;
};

/// OpenMP-parallel sweep. Per-draw streams are seeded by index, and the
/// reduction is an order-independent max, so the result is identical to the
/// serial reference for any thread count.
GainSweepResult gain_margin_sweep(const GainSweepParams& params);

/// Plain-loop reference implementation kept for testing and benchmarking.
GainSweepResult gain_margin_sweep_serial(const GainSweepParams& params);

}  // namespace smc
