#include "smc/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "smc/bounds.hpp"
#include "smc/parallel.hpp"
#include "smc/rng.hpp"

namespace smc {

namespace {

struct CascadeSpec {
    int order_n = 0;
    double lambda = 0.0;
    double phi = 0.0;
    std::vector<double> weights;  // surface coefficients on err^(0..n-2)
    double h_max = 0.0;
    double horizon = 0.0;
    double tail_start = 0.0;
};

CascadeSpec build_cascade(const WitnessParams& p) {
    if (p.order_n < 1 || p.order_n > kMaxOrder) {
        throw std::invalid_argument("witness: order must be in [1, " + std::to_string(kMaxOrder) +
                                    "], got " + std::to_string(p.order_n));
    }
    if (p.derivative_index < 0 || p.derivative_index >= p.order_n) {
        throw std::invalid_argument("witness: derivative index must be in [0, n-1], got " +
                                    std::to_string(p.derivative_index));
    }
    if (!(std::isfinite(p.lambda) && p.lambda > 0.0)) {
        throw std::invalid_argument("witness: lambda must be > 0");
    }
    if (!(std::isfinite(p.phi) && p.phi > 0.0)) {
        throw std::invalid_argument("witness: phi must be > 0");
    }
    if (!(p.tail_fraction > 0.0 && p.tail_fraction < 1.0)) {
        throw std::invalid_argument("witness: tail_fraction must be in (0,1)");
    }
    if (!(p.horizon_factor > 0.0) || !(p.step_factor > 0.0) || p.switches < 0) {
        throw std::invalid_argument("witness: bad horizon/step/switch parameters");
    }
    CascadeSpec c;
    c.order_n = p.order_n;
    c.lambda = p.lambda;
    c.phi = p.phi;
    const SurfaceSpec surf = make_surface(p.order_n, p.lambda);
    c.weights.assign(surf.coeffs_c.begin(), surf.coeffs_c.end() - 1);
    c.h_max = p.step_factor / p.lambda;
    c.horizon = p.horizon_factor / p.lambda;
    c.tail_start = c.horizon * (1.0 - p.tail_fraction);
    return c;
}

/// err^(n-1) recovered from the drive value and the cascade state.
double top_derivative(const CascadeSpec& c, double s, std::span<const double> y) {
    double top = s;
    for (std::size_t j = 0; j < c.weights.size(); ++j) top -= c.weights[j] * y[j];
    return top;
}

/// Integrate the cascade from rest under a bang-bang drive, invoking
/// sample(t, s, y) at t = 0, every RK4 substep boundary, and (with the new
/// drive value) at every switch instant.
template <typename Sampler>
void integrate_cascade(const CascadeSpec& c, const BangBangSchedule& schedule, Sampler&& sample) {
    std::vector<double> times(schedule.switch_times);
    for (double& tau : times) tau = std::clamp(tau, 0.0, c.horizon);
    std::sort(times.begin(), times.end());
    times.push_back(c.horizon);

    // Fixed-capacity state buffers: the cascade has at most kMaxOrder - 1
    // components, and this loop is the hot path of the parallel search.
    const std::size_t m = c.weights.size();
    std::array<double, kMaxOrder> y{};
    std::array<double, kMaxOrder> k1{}, k2{}, k3{}, k4{}, tmp{};

    auto rhs = [&](std::span<const double> state, double s, std::span<double> dy) {
        for (std::size_t j = 0; j + 1 < m; ++j) dy[j] = state[j + 1];
        if (m > 0) dy[m - 1] = top_derivative(c, s, state);
    };

    double s = c.phi;
    double prev = 0.0;
    sample(0.0, s, std::span<const double>(y.data(), m));
    for (double boundary : times) {
        const double len = boundary - prev;
        if (len > 0.0 && m > 0) {
            const auto nsteps = static_cast<std::size_t>(std::ceil(len / c.h_max - 1e-12));
            const double h = len / static_cast<double>(std::max<std::size_t>(nsteps, 1));
            for (std::size_t k = 0; k < std::max<std::size_t>(nsteps, 1); ++k) {
                rhs(std::span<const double>(y.data(), m), s, std::span<double>(k1.data(), m));
                for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
                rhs(std::span<const double>(tmp.data(), m), s, std::span<double>(k2.data(), m));
                for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
                rhs(std::span<const double>(tmp.data(), m), s, std::span<double>(k3.data(), m));
                for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + h * k3[j];
                rhs(std::span<const double>(tmp.data(), m), s, std::span<double>(k4.data(), m));
                for (std::size_t j = 0; j < m; ++j) {
                    y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
                }
                sample(prev + static_cast<double>(k + 1) * h, s, std::span<const double>(y.data(), m));
            }
        } else if (len > 0.0) {
            // n = 1: no cascade state, the drive is the error itself.
            sample(boundary, s, std::span<const double>(y.data(), m));
        }
        if (boundary < c.horizon) {
            s = -s;
            sample(boundary, s, std::span<const double>(y.data(), m));
        }
        prev = boundary;
    }
}

double corrected_bound_for(const WitnessParams& p) {
    const ZetaTable table = zeta_table(p.order_n);
    return static_cast<double>(table.zeta[static_cast<std::size_t>(p.derivative_index)]) *
           lambda_power(p.lambda, p.derivative_index - p.order_n + 1) * p.phi;
}

double slotine_bound_for(const WitnessParams& p) {
    const ZetaTable table = zeta_table(p.order_n);
    return static_cast<double>(table.slotine[static_cast<std::size_t>(p.derivative_index)]) *
           lambda_power(p.lambda, p.derivative_index - p.order_n + 1) * p.phi;
}

double evaluate_on(const CascadeSpec& c, const WitnessParams& p, const BangBangSchedule& schedule,
                   double corrected_bound) {
    const int idx = p.derivative_index;
    double excursion = 0.0;
    integrate_cascade(c, schedule, [&](double t, double s, std::span<const double> y) {
        if (t + 1e-12 < c.tail_start) return;
        const double value = idx < c.order_n - 1 ? y[static_cast<std::size_t>(idx)]
                                                 : top_derivative(c, s, y);
        excursion = std::max(excursion, std::abs(value));
    });
    if (excursion > corrected_bound * (1.0 + 1e-3)) {
        throw std::logic_error("witness: tail excursion " + std::to_string(excursion) +
                               " exceeds the corrected bound " + std::to_string(corrected_bound) +
                               "; cascade integrator or zeta table is broken");
    }
    return excursion;
}

struct RestartOutcome {
    double best = -1.0;
    BangBangSchedule schedule;
    std::uint64_t evaluations = 0;
};

/// One independent restart: a start schedule (restart 0 starts from the
/// constant drive, the rest from random switch times), greedy coordinate
/// refinement with a shrinking step, fresh redraws while budget remains.
RestartOutcome run_restart(const CascadeSpec& c, const WitnessParams& p, double corrected_bound,
                           std::uint64_t restart, std::uint64_t local_budget) {
    SplitMix64 rng(derive_stream_seed(p.seed, restart));
    const auto m = static_cast<std::size_t>(p.switches);

    RestartOutcome out;
    out.schedule.horizon = c.horizon;

    auto draw_schedule = [&] {
        BangBangSchedule sched;
        sched.horizon = c.horizon;
        sched.switch_times.resize(m);
        for (double& tau : sched.switch_times) tau = rng.uniform(0.0, c.horizon);
        return sched;
    };

    BangBangSchedule current;
    current.horizon = c.horizon;
    current.switch_times.assign(m, 0.0);  // constant +phi drive
    if (restart != 0) current = draw_schedule();

    double current_value = evaluate_on(c, p, current, corrected_bound);
    ++out.evaluations;
    out.best = current_value;
    out.schedule = current;

    const double min_step = c.horizon * 1e-4;
    while (out.evaluations < local_budget) {
        bool budget_left = true;
        for (double step = 0.25 * c.horizon; step >= min_step && budget_left; step *= 0.5) {
            for (std::size_t j = 0; j < m && budget_left; ++j) {
                for (double delta : {step, -step}) {
                    if (out.evaluations >= local_budget) {
                        budget_left = false;
                        break;
                    }
                    BangBangSchedule cand = current;
                    cand.switch_times[j] = std::clamp(cand.switch_times[j] + delta, 0.0, c.horizon);
                    const double v = evaluate_on(c, p, cand, corrected_bound);
                    ++out.evaluations;
                    if (v > current_value) {
                        current = cand;
                        current_value = v;
                        if (v > out.best) {
                            out.best = v;
                            out.schedule = cand;
                        }
                    }
                }
            }
        }
        if (out.evaluations >= local_budget || m == 0) break;
        current = draw_schedule();
        current_value = evaluate_on(c, p, current, corrected_bound);
        ++out.evaluations;
        if (current_value > out.best) {
            out.best = current_value;
            out.schedule = current;
        }
    }
    return out;
}

WitnessResult fold(const std::vector<RestartOutcome>& outcomes, double corrected_bound,
                   double slotine_bound) {
    WitnessResult result;
    result.corrected_bound = corrected_bound;
    result.slotine_bound = slotine_bound;
    result.best_excursion = -1.0;
    for (const RestartOutcome& o : outcomes) {  // index order: deterministic tie-break
        result.evaluations += o.evaluations;
        if (o.best > result.best_excursion) {
            result.best_excursion = o.best;
            result.best_schedule = o.schedule;
        }
    }
    return result;
}

std::uint64_t restart_count(const WitnessParams& p) {
    const std::uint64_t per_restart_target = 1 + 6ULL * static_cast<std::uint64_t>(p.switches);
    return std::max<std::uint64_t>(1, p.budget / per_restart_target);
}

}  // namespace

double evaluate_schedule(const WitnessParams& params, const BangBangSchedule& schedule) {
    const CascadeSpec c = build_cascade(params);
    return evaluate_on(c, params, schedule, corrected_bound_for(params));
}

WitnessResult search_witness_serial(const WitnessParams& params) {
    if (params.budget == 0) throw std::invalid_argument("search_witness: budget must be > 0");
    const CascadeSpec c = build_cascade(params);
    const double corrected = corrected_bound_for(params);
    const double slotine = slotine_bound_for(params);

    const std::uint64_t restarts = restart_count(params);
    const std::uint64_t local_budget = params.budget / restarts;
    std::vector<RestartOutcome> outcomes(restarts);
    for (std::uint64_t r = 0; r < restarts; ++r) {
        outcomes[r] = run_restart(c, params, corrected, r, local_budget);
    }
    return fold(outcomes, corrected, slotine);
}

WitnessResult search_witness(const WitnessParams& params) {
    if (params.budget == 0) throw std::invalid_argument("search_witness: budget must be > 0");
    const CascadeSpec c = build_cascade(params);
    const double corrected = corrected_bound_for(params);
    const double slotine = slotine_bound_for(params);

    const std::uint64_t restarts = restart_count(params);
    const std::uint64_t local_budget = params.budget / restarts;
    std::vector<RestartOutcome> outcomes(restarts);
    const int threads = resolve_thread_count(params.jobs);
    const auto count = static_cast<std::int64_t>(restarts);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t r = 0; r < count; ++r) {
        outcomes[static_cast<std::uint64_t>(r)] =
            run_restart(c, params, corrected, static_cast<std::uint64_t>(r), local_budget);
    }
    return fold(outcomes, corrected, slotine);
}

WitnessTrace trace_schedule(const WitnessParams& params, const BangBangSchedule& schedule) {
    const CascadeSpec c = build_cascade(params);
    WitnessTrace trace;
    trace.derivatives.resize(static_cast<std::size_t>(params.order_n));
    integrate_cascade(c, schedule, [&](double t, double s, std::span<const double> y) {
        trace.t.push_back(t);
        trace.s.push_back(s);
        for (int i = 0; i < params.order_n; ++i) {
            const double value = i < params.order_n - 1 ? y[static_cast<std::size_t>(i)]
                                                        : top_derivative(c, s, y);
            trace.derivatives[static_cast<std::size_t>(i)].push_back(value);
        }
    });
    return trace;
}

}  // namespace smc
