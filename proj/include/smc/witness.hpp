#pragma once

#include <cstdint>
#include <vector>

#include "smc/surface.hpp"

namespace smc {

/// Bang-bang drive signal for the error cascade: s(t) starts at +phi and
/// flips sign at each switch time (sorted, within [0, horizon]). s is taken
/// right-continuous at the switches. Starting at -phi adds nothing: negating
/// the schedule negates the response.
struct BangBangSchedule {
    double horizon = 0.0;
    std::vector<double> switch_times;
};

struct WitnessParams {
    int order_n = 0;
    double lambda = 0.0;
    double phi = 0.0;
    int derivative_index = 0;
    std::uint64_t budget = 0;    // total schedule evaluations
    int switches = 12;
    std::uint64_t seed = 0;
    int jobs = 0;                // 0 = all cores
    double horizon_factor = 30.0;   // horizon = horizon_factor / lambda
    double tail_fraction = 0.5;     // excursions measured over the last part
    double step_factor = 0.02;      // integrator step = step_factor / lambda
};

struct WitnessResult {
    double best_excursion = 0.0;
    BangBangSchedule best_schedule;
    std::uint64_t evaluations = 0;
    double corrected_bound = 0.0;  // zeta_i lambda^(i-n+1) phi
    double slotine_bound = 0.0;    // 2^i  lambda^(i-n+1) phi

    bool exceeds_slotine() const { return best_excursion > slotine_bound; }
};

/// Tail excursion max |err^(i)(t)| of the cascade (d/dt + lambda)^(n-1) e = s
/// started from rest and driven by the schedule. Throws std::logic_error if
/// the excursion ever exceeds the corrected bound by more than 0.1% - that
/// can only mean a broken integrator or zeta table, never a valid schedule.
double evaluate_schedule(const WitnessParams& params, const BangBangSchedule& schedule);

/// Worst-case excursion search: random restarts plus coordinate refinement of
/// the switch times, at most `budget` schedule evaluations in total.
/// Restarts are independent (seeded by index) and the best-of reduction is
/// deterministic, so serial and parallel runs agree exactly.
WitnessResult search_witness(const WitnessParams& params);

/// Plain-loop reference kept for testing and benchmarking.
WitnessResult search_witness_serial(const WitnessParams& params);

/// Sampled trajectory of the winning schedule, for CSV emission:
/// columns t, s, err^(0..n-1).
struct WitnessTrace {
    std::vector<double> t;
    std::vector<double> s;
    std::vector<std::vector<double>> derivatives;  // [n][samples]
};
WitnessTrace trace_schedule(const WitnessParams& params, const BangBangSchedule& schedule);

}  // namespace smc
