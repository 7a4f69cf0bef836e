#pragma once

#include <string>
#include <vector>

#include "smc/plant.hpp"

namespace smc {

/// A plant, the uncertainty model paired with it, and a reference trajectory.
struct BenchmarkCase {
    PlantModel plant;
    UncertaintyModel uncertainty;
    DesiredTrajectory trajectory;
    std::string name;
};

// Plant builders shared between the built-in zoo and the scenario-file
// parser, so a config file selecting a plant kind reproduces the same model.

struct DuffingParams {
    double a1_true = 0.6;   // damping |xdot| xdot coefficient
    double a2_true = 1.2;   // cubic stiffness
    double b = 1.5;         // constant, known input gain
    double a1_nominal = 0.4;
    double a2_nominal = 0.9;
    double f_scale = 1.05;  // multiplier on the tight mismatch bound
    double f_margin = 1e-9; // absolute floor on F
    double b_min = 1.5;
    double b_max = 1.5;
};

struct Chain3Params {
    double dist_amp = 0.4;  // matched disturbance dist_amp * sin(x0)
    double b = 1.0;
    double f_scale = 1.05;
    double f_margin = 1e-9;
    double b_min = 1.0;
    double b_max = 1.0;
};

struct VarGainParams {
    double k_lin = 1.0;     // known viscous term
    double c_true = 0.8;    // true sin(x0) coefficient
    double c_nominal = 0.5;
    double b0 = 1.2;        // gain midpoint
    double b_ripple = 0.35; // b(x) = b0 (1 + b_ripple sin(x0))
    double f_scale = 1.05;
    double f_margin = 1e-9;
    double b_min = 0.75;
    double b_max = 1.65;
};

PlantModel make_duffing_plant(const DuffingParams& p);
UncertaintyModel make_duffing_uncertainty(const DuffingParams& p);

PlantModel make_chain3_plant(const Chain3Params& p);
UncertaintyModel make_chain3_uncertainty(const Chain3Params& p);

PlantModel make_vargain_plant(const VarGainParams& p);
UncertaintyModel make_vargain_uncertainty(const VarGainParams& p);

/// amp * sin(omega t) with every derivative supplied analytically.
DesiredTrajectory make_sinusoid(int n, double amp, double omega);

/// Smoothed step amp/2 * (1 + tanh(rate (t - t0))); derivatives are coded up
/// to order 3, which covers the n <= 3 benchmark plants.
DesiredTrajectory make_smoothstep(int n, double amp, double rate, double t0);

/// The three benchmark scenarios:
///   (a) duffing_n2 - n=2 damped Duffing plant, mismatched f_hat, beta = 1
///   (b) chain_n3   - n=3 integrator chain with a bounded matched disturbance
///   (c) vargain_n2 - n=2 with sinusoidally varying input gain, beta > 1
std::vector<BenchmarkCase> benchmark_plants();

}  // namespace smc
