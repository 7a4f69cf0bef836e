#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "smc/rng.hpp"
#include "smc/witness.hpp"

using namespace smc;

namespace {

WitnessParams base_params(int n, double lambda, double phi, int index, std::uint64_t budget) {
    WitnessParams p;
    p.order_n = n;
    p.lambda = lambda;
    p.phi = phi;
    p.derivative_index = index;
    p.budget = budget;
    p.seed = 7;
    p.jobs = 1;
    return p;
}

}  // namespace

TEST_CASE("witness search rejects a zero budget and bad indexes") {
    WitnessParams p = base_params(3, 1.0, 1.0, 2, 0);
    CHECK_THROWS_AS(search_witness(p), std::invalid_argument);
    p.budget = 10;
    p.derivative_index = 3;
    CHECK_THROWS_AS(search_witness(p), std::invalid_argument);
    p.derivative_index = -1;
    CHECK_THROWS_AS(search_witness(p), std::invalid_argument);
}

TEST_CASE("witness i = 0 attains the DC gain within 1%") {
    // Constant drive s = phi settles at phi / lambda^(n-1).
    const WitnessParams p = base_params(3, 2.0, 0.5, 0, 1500);
    const WitnessResult r = search_witness(p);
    const double dc = 0.5 / (2.0 * 2.0);
    CHECK(r.best_excursion >= 0.99 * dc);
    CHECK(r.best_excursion <= dc * (1.0 + 1e-9));
}

TEST_CASE("witness i = 1, n = 2 approaches 2 phi from below") {
    const WitnessParams p = base_params(2, 1.0, 1.0, 1, 2500);
    const WitnessResult r = search_witness(p);
    CHECK(r.best_excursion >= 1.95);
    CHECK(r.best_excursion <= 2.0 * (1.0 + 1e-9));
    CHECK(r.corrected_bound == doctest::Approx(2.0));
}

TEST_CASE("witness central case i = 2, n = 3: contained by 6, short of 4") {
    // The worst asymptotic excursion of the driven cascade is
    // (2 + 2 e^-2) phi ~= 2.2707 phi: comfortably below the corrected bound 6
    // and also below the classical bound 4, so the classical-bound violation
    // cannot be exhibited by steady-tail driving; the gap gets recorded.
    const WitnessParams p = base_params(3, 1.0, 1.0, 2, 4000);
    const WitnessResult r = search_witness(p);
    CHECK(r.corrected_bound == doctest::Approx(6.0));
    CHECK(r.slotine_bound == doctest::Approx(4.0));
    CHECK(r.best_excursion <= 6.0 * (1.0 + 1e-3));
    const double true_sup = 2.0 + 2.0 * std::exp(-2.0);
    CHECK(r.best_excursion >= 0.97 * true_sup);
    CHECK(r.best_excursion <= true_sup * (1.0 + 5e-3));
    CHECK(!r.exceeds_slotine());
}

TEST_CASE("witness soundness: no random schedule ever exceeds the corrected bound") {
    // evaluate_schedule throws if an excursion passes the bound; sweep a
    // large batch of random schedules and assert by absence of throws.
    const WitnessParams p = base_params(3, 1.0, 1.0, 2, 1);
    SplitMix64 rng(99);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        BangBangSchedule sched;
        sched.horizon = 30.0;
        const int m = static_cast<int>(rng.next() % 13);
        for (int j = 0; j < m; ++j) sched.switch_times.push_back(rng.uniform(0.0, 30.0));
        worst = std::max(worst, evaluate_schedule(p, sched));
    }
    CHECK(worst <= 6.0 * (1.0 + 1e-3));
}

TEST_CASE("witness evaluations stay within budget and are reported") {
    const WitnessParams p = base_params(3, 1.0, 1.0, 2, 2000);
    const WitnessResult r = search_witness(p);
    CHECK(r.evaluations <= 2000);
    CHECK(r.evaluations >= 1800);  // restart rounding only sheds a few
}

TEST_CASE("witness lambda rescaling moves excursions by lambda^(i-n+1)") {
    const WitnessParams p1 = base_params(3, 1.0, 1.0, 1, 2500);
    WitnessParams p2 = base_params(3, 2.0, 1.0, 1, 2500);
    const WitnessResult r1 = search_witness(p1);
    const WitnessResult r2 = search_witness(p2);
    // i - n + 1 = -1: doubling lambda should halve the best excursion.
    CHECK(r2.best_excursion * 2.0 == doctest::Approx(r1.best_excursion).epsilon(0.02));
}

TEST_CASE("serial and parallel witness searches agree exactly") {
    WitnessParams p = base_params(3, 1.5, 0.7, 2, 2000);
    p.jobs = 0;  // all cores
    const WitnessResult parallel = search_witness(p);
    const WitnessResult serial = search_witness_serial(p);
    CHECK(parallel.best_excursion == serial.best_excursion);
    CHECK(parallel.evaluations == serial.evaluations);
    CHECK(parallel.best_schedule.switch_times == serial.best_schedule.switch_times);
}

TEST_CASE("witness trace covers the run and stays inside the phi band") {
    const WitnessParams p = base_params(3, 1.0, 1.0, 0, 200);
    const WitnessResult r = search_witness(p);
    const WitnessTrace trace = trace_schedule(p, r.best_schedule);
    REQUIRE(!trace.t.empty());
    CHECK(trace.t.front() == 0.0);
    CHECK(trace.t.back() == doctest::Approx(30.0));
    REQUIRE(trace.derivatives.size() == 3);
    for (double s : trace.s) CHECK(std::abs(s) == doctest::Approx(1.0));
}

TEST_CASE("degenerate order n = 1: the excursion is the drive itself") {
    const WitnessParams p = base_params(1, 3.0, 0.25, 0, 50);
    const WitnessResult r = search_witness(p);
    CHECK(r.best_excursion == doctest::Approx(0.25));
    CHECK(r.corrected_bound == doctest::Approx(0.25));
}
