// Timing comparison of the serial reference kernels against their
// OpenMP-parallel counterparts. Both pairs must agree exactly (identical
// per-index seeding and order-independent reductions); this binary checks
// the agreement and prints wall times plus speedup.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "smc/parallel.hpp"
#include "smc/sampling.hpp"
#include "smc/scenarios.hpp"
#include "smc/witness.hpp"

namespace {

template <typename F>
double time_seconds(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_row(const char* name, double serial_s, double parallel_s, bool agree) {
    std::cout << name << ": serial " << serial_s << " s, parallel " << parallel_s << " s, speedup "
              << serial_s / parallel_s << "x, results " << (agree ? "identical" : "DIFFER")
              << "\n";
}

}  // namespace

int main() {
    std::cout << "threads available: " << smc::resolve_thread_count(0) << "\n";
    bool all_agree = true;

    {
        smc::WitnessParams params;
        params.order_n = 3;
        params.lambda = 1.0;
        params.phi = 1.0;
        params.derivative_index = 2;
        params.budget = 40000;
        params.seed = 9;

        smc::WitnessResult serial_result, parallel_result;
        const double serial_s = time_seconds([&] { serial_result = smc::search_witness_serial(params); });
        const double parallel_s = time_seconds([&] { parallel_result = smc::search_witness(params); });
        const bool agree = serial_result.best_excursion == parallel_result.best_excursion &&
                           serial_result.evaluations == parallel_result.evaluations &&
                           serial_result.best_schedule.switch_times ==
                               parallel_result.best_schedule.switch_times;
        all_agree = all_agree && agree;
        print_row("witness search (40000 schedules)", serial_s, parallel_s, agree);
    }

    {
        smc::VarGainParams vp;
        smc::GainSweepParams sweep;
        sweep.cfg = smc::make_controller(smc::make_surface(2, 2.0),
                                         smc::make_vargain_uncertainty(vp), 0.6, 0.08,
                                         smc::SmoothingKind::Sign);
        sweep.state_lo = {-2.0, -2.0};
        sweep.state_hi = {2.0, 2.0};
        sweep.desired_lo = {-1.0, -1.0};
        sweep.desired_hi = {1.0, 1.0};
        sweep.desired_nth_max = 1.5;
        sweep.samples = 4000000;
        sweep.seed = 11;

        smc::GainSweepResult serial_result, parallel_result;
        const double serial_s = time_seconds([&] { serial_result = smc::gain_margin_sweep_serial(sweep); });
        const double parallel_s = time_seconds([&] { parallel_result = smc::gain_margin_sweep(sweep); });
        const bool agree = serial_result.max_violation == parallel_result.max_violation &&
                           serial_result.worst_index == parallel_result.worst_index;
        all_agree = all_agree && agree;
        print_row("gain sweep (4000000 draws)", serial_s, parallel_s, agree);
    }

    return all_agree ? EXIT_SUCCESS : EXIT_FAILURE;
}
