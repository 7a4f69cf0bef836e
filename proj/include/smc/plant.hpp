#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smc/controller.hpp"

namespace smc {

/// Ground truth used only by the simulator: x^(n) = f_true(x) + b_true(x) u.
struct PlantModel {
    int order_n = 0;
    StateFn f_true;
    StateFn b_true;
    std::string name;
};

/// Desired trajectory with all n derivatives plus x_d^(n), analytic in t.
struct DesiredTrajectory {
    std::function<DesiredState(double)> eval;
    std::string name;
};

/// One logged simulation step. Time is not stored; row k lives at t = k * dt.
struct TrajectoryRow {
    std::vector<double> state;
    std::vector<double> desired;
    std::vector<double> error;
    double s = 0.0;
    double s_phi = 0.0;
    double K = 0.0;
    double u = 0.0;
    double V = 0.0;  // s_phi^2 / 2
};

struct TrajectoryLog {
    double dt = 0.0;
    std::vector<TrajectoryRow> rows;

    double time(std::size_t k) const { return static_cast<double>(k) * dt; }
};

/// A benchmark scenario definition broke one of the modelling assumptions at
/// runtime (1: |f_hat - f| <= F, 2: b in [b_min, b_max]).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int assumption, double t, const std::string& what_arg)
        : std::runtime_error(what_arg), assumption_(assumption), t_(t) {}
    int assumption() const { return assumption_; }
    double t() const { return t_; }

private:
    int assumption_;
    double t_;
};

/// A state component left the +/-1e12 guard band.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double t, const std::string& what_arg)
        : std::runtime_error(what_arg), t_(t) {}
    double t() const { return t_; }

private:
    double t_;
};

/// How the control input is treated inside one integration step.
/// ZeroOrderHold matches digital-controller practice and is the default;
/// EveryStage re-evaluates the law at the internal Runge-Kutta stages and
/// exists for integrator-order measurements on smooth laws.
enum class ControlUpdate {
    ZeroOrderHold,
    EveryStage,
};

/// One classical RK4 step of the chain x_i' = x_{i+1},
/// x_{n-1}' = f_true(x) + b_true(x) u, with u held constant.
std::vector<double> step(const PlantModel& plant, std::span<const double> state,
                         double u, double dt);

/// Closed-loop fixed-step simulation. Produces ceil(t_end/dt) + 1 rows on a
/// uniform grid with the control computed once per row (zero-order hold).
/// Checks Assumptions 1-2 at every visited state and guards against blow-up.
TrajectoryLog simulate(const PlantModel& plant, const ControllerConfig& cfg,
                       const DesiredTrajectory& traj, std::span<const double> x0,
                       double t_end, double dt,
                       ControlUpdate update = ControlUpdate::ZeroOrderHold);

/// Step-size rule used when a scenario does not pin dt:
/// min(1e-3, 0.01/lambda, phi / (10 * sdot_estimate)).
double default_dt(const ControllerConfig& cfg, std::span<const double> x0,
                  const DesiredTrajectory& traj);

}  // namespace smc
