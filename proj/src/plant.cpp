#include "smc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace smc {

namespace {

constexpr double kDivergenceGuard = 1e12;

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

/// Chain derivative for x^(n) = f(x) + b(x) u.
void chain_rhs(const PlantModel& plant, std::span<const double> x, double u,
               std::span<double> dx) {
    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) dx[i] = x[i + 1];
    const double f = plant.f_true(x);
    const double b = plant.b_true(x);
    const double top = f + b * u;
    if (!std::isfinite(top)) {
        throw std::runtime_error("step: non-finite derivative (f = " + std::to_string(f) +
                                 ", b = " + std::to_string(b) + ") at state " + describe_state(x));
    }
    dx[n - 1] = top;
}

}  // namespace

std::vector<double> step(const PlantModel& plant, std::span<const double> state, double u,
                         double dt) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw std::invalid_argument("step: dt must be > 0, got " + std::to_string(dt));
    }
    if (static_cast<int>(state.size()) != plant.order_n) {
        throw std::invalid_argument("step: state length " + std::to_string(state.size()) +
                                    " does not match plant order " + std::to_string(plant.order_n));
    }
    const std::size_t n = state.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), next(n);

    chain_rhs(plant, state, u, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
    chain_rhs(plant, tmp, u, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
    chain_rhs(plant, tmp, u, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
    chain_rhs(plant, tmp, u, k4);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return next;
}

namespace {

/// RK4 step with the control law re-evaluated at every internal stage.
std::vector<double> step_every_stage(const PlantModel& plant, const ControllerConfig& cfg,
                                     const DesiredTrajectory& traj, std::span<const double> state,
                                     double t, double dt) {
    const std::size_t n = state.size();
    auto rhs = [&](std::span<const double> x, double stage_t, std::span<double> dx) {
        const DesiredState d = traj.eval(stage_t);
        const double u = control(cfg, x, d).u;
        chain_rhs(plant, x, u, dx);
    };
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), next(n);
    rhs(state, t, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
    rhs(tmp, t + 0.5 * dt, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
    rhs(tmp, t + 0.5 * dt, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
    rhs(tmp, t + dt, k4);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return next;
}

void check_assumptions(const PlantModel& plant, const UncertaintyModel& un,
                       std::span<const double> x, double t) {
    const double b = plant.b_true(x);
    if (!(b >= un.b_min && b <= un.b_max)) {
        std::ostringstream msg;
        msg << "scenario error: Assumption 2 violated at t = " << t << ": b(x) = " << b
            << " outside [" << un.b_min << ", " << un.b_max << "] at state "
            << describe_state(x);
        throw ScenarioError(2, t, msg.str());
    }
    const double f = plant.f_true(x);
    const double f_hat = un.f_hat(x);
    const double F = un.f_bound(x);
    if (!(std::abs(f_hat - f) <= F)) {
        std::ostringstream msg;
        msg << "scenario error: Assumption 1 violated at t = " << t
            << ": |f_hat - f| = " << std::abs(f_hat - f) << " > F = " << F << " at state "
            << describe_state(x);
        throw ScenarioError(1, t, msg.str());
    }
}

void check_divergence(std::span<const double> x, double t) {
    for (double xi : x) {
        if (!std::isfinite(xi) || std::abs(xi) > kDivergenceGuard) {
            throw DivergenceError(t, "divergence: state component " + std::to_string(xi) +
                                         " exceeded guard at t = " + std::to_string(t));
        }
    }
}

DesiredState eval_desired(const DesiredTrajectory& traj, double t, int n) {
    DesiredState d = traj.eval(t);
    if (static_cast<int>(d.vector.size()) != n) {
        throw std::invalid_argument("simulate: trajectory returned " +
                                    std::to_string(d.vector.size()) + " derivatives, need " +
                                    std::to_string(n));
    }
    for (double v : d.vector) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("simulate: trajectory returned non-finite value at t = " +
                                        std::to_string(t));
        }
    }
    if (!std::isfinite(d.nth_derivative)) {
        throw std::invalid_argument("simulate: trajectory n-th derivative non-finite at t = " +
                                    std::to_string(t));
    }
    return d;
}

}  // namespace

TrajectoryLog simulate(const PlantModel& plant, const ControllerConfig& cfg,
                       const DesiredTrajectory& traj, std::span<const double> x0, double t_end,
                       double dt, ControlUpdate update) {
    if (plant.order_n != cfg.surface.order_n) {
        throw std::invalid_argument("simulate: plant order " + std::to_string(plant.order_n) +
                                    " does not match surface order " +
                                    std::to_string(cfg.surface.order_n));
    }
    if (static_cast<int>(x0.size()) != plant.order_n) {
        throw std::invalid_argument("simulate: x0 length " + std::to_string(x0.size()) +
                                    " does not match plant order " + std::to_string(plant.order_n));
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw std::invalid_argument("simulate: dt must be > 0, got " + std::to_string(dt));
    }
    if (!(std::isfinite(t_end) && t_end >= dt)) {
        throw std::invalid_argument("simulate: t_end must be >= dt, got " + std::to_string(t_end));
    }

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));

    TrajectoryLog log;
    log.dt = dt;
    log.rows.reserve(steps + 1);

    std::vector<double> x(x0.begin(), x0.end());
    const auto n = static_cast<std::size_t>(plant.order_n);

    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = log.time(k);
        check_divergence(x, t);
        check_assumptions(plant, cfg.uncertainty, x, t);

        const DesiredState d = eval_desired(traj, t, plant.order_n);
        const ControlOutput out = control(cfg, x, d);

        TrajectoryRow row;
        row.state = x;
        row.desired = d.vector;
        row.error.resize(n);
        for (std::size_t i = 0; i < n; ++i) row.error[i] = x[i] - d.vector[i];
        row.s = out.diag.s;
        row.s_phi = out.diag.s_phi;
        row.K = out.diag.K;
        row.u = out.u;
        row.V = 0.5 * out.diag.s_phi * out.diag.s_phi;
        log.rows.push_back(std::move(row));

        if (k == steps) break;
        x = update == ControlUpdate::ZeroOrderHold
                ? step(plant, x, out.u, dt)
                : step_every_stage(plant, cfg, traj, x, t, dt);
    }
    return log;
}

double default_dt(const ControllerConfig& cfg, std::span<const double> x0,
                  const DesiredTrajectory& traj) {
    const DesiredState d = traj.eval(0.0);
    const ControlOutput out = control(cfg, x0, d);
    // Crude |sdot| scale at t = 0: worst-gain plant response plus the known
    // surface drift terms.
    double cbar_err = 0.0;
    for (std::size_t k = 0; k < x0.size(); ++k) {
        cbar_err += cfg.surface.coeffs_cbar[k] * (x0[k] - d.vector[k]);
    }
    const double f_hat = cfg.uncertainty.f_hat(x0);
    const double F = cfg.uncertainty.f_bound(x0);
    double sdot_estimate = std::abs(f_hat) + F + cfg.uncertainty.b_max * std::abs(out.u) +
                           std::abs(d.nth_derivative) + std::abs(cbar_err);
    sdot_estimate = std::max(sdot_estimate, cfg.eta);
    return std::min({1e-3, 0.01 / cfg.surface.lambda, cfg.phi / (10.0 * sdot_estimate)});
}

}  // namespace smc
