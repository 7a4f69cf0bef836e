#include "smc/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace smc {

PlantModel make_duffing_plant(const DuffingParams& p) {
    PlantModel plant;
    plant.order_n = 2;
    plant.name = "duffing_n2";
    plant.f_true = [p](std::span<const double> x) {
        return -p.a1_true * x[1] * std::abs(x[1]) - p.a2_true * x[0] * x[0] * x[0];
    };
    plant.b_true = [p](std::span<const double>) { return p.b; };
    return plant;
}

UncertaintyModel make_duffing_uncertainty(const DuffingParams& p) {
    const double da1 = std::abs(p.a1_true - p.a1_nominal);
    const double da2 = std::abs(p.a2_true - p.a2_nominal);
    auto f_hat = [p](std::span<const double> x) {
        return -p.a1_nominal * x[1] * std::abs(x[1]) - p.a2_nominal * x[0] * x[0] * x[0];
    };
    auto f_bound = [p, da1, da2](std::span<const double> x) {
        const double tight = da1 * x[1] * x[1] + da2 * std::abs(x[0] * x[0] * x[0]);
        return tight * p.f_scale + p.f_margin;
    };
    return make_uncertainty(f_hat, f_bound, p.b_min, p.b_max);
}

PlantModel make_chain3_plant(const Chain3Params& p) {
    PlantModel plant;
    plant.order_n = 3;
    plant.name = "chain_n3";
    plant.f_true = [p](std::span<const double> x) { return p.dist_amp * std::sin(x[0]); };
    plant.b_true = [p](std::span<const double>) { return p.b; };
    return plant;
}

UncertaintyModel make_chain3_uncertainty(const Chain3Params& p) {
    auto f_hat = [](std::span<const double>) { return 0.0; };
    auto f_bound = [p](std::span<const double>) { return p.dist_amp * p.f_scale + p.f_margin; };
    return make_uncertainty(f_hat, f_bound, p.b_min, p.b_max);
}

PlantModel make_vargain_plant(const VarGainParams& p) {
    PlantModel plant;
    plant.order_n = 2;
    plant.name = "vargain_n2";
    plant.f_true = [p](std::span<const double> x) {
        return -p.k_lin * x[1] - p.c_true * std::sin(x[0]);
    };
    plant.b_true = [p](std::span<const double> x) {
        return p.b0 * (1.0 + p.b_ripple * std::sin(x[0]));
    };
    return plant;
}

UncertaintyModel make_vargain_uncertainty(const VarGainParams& p) {
    const double dc = std::abs(p.c_true - p.c_nominal);
    auto f_hat = [p](std::span<const double> x) {
        return -p.k_lin * x[1] - p.c_nominal * std::sin(x[0]);
    };
    auto f_bound = [p, dc](std::span<const double> x) {
        return dc * std::abs(std::sin(x[0])) * p.f_scale + p.f_margin;
    };
    return make_uncertainty(f_hat, f_bound, p.b_min, p.b_max);
}

DesiredTrajectory make_sinusoid(int n, double amp, double omega) {
    if (n < 1 || n > kMaxOrder) {
        throw std::invalid_argument("make_sinusoid: order out of range: " + std::to_string(n));
    }
    DesiredTrajectory traj;
    traj.name = "sinusoid";
    traj.eval = [n, amp, omega](double t) {
        DesiredState d;
        d.vector.resize(static_cast<std::size_t>(n));
        // d^k/dt^k amp sin(wt) = amp w^k sin(wt + k pi/2)
        double scale = amp;
        for (int k = 0; k < n; ++k) {
            d.vector[static_cast<std::size_t>(k)] =
                scale * std::sin(omega * t + 0.5 * M_PI * static_cast<double>(k));
            scale *= omega;
        }
        d.nth_derivative = scale * std::sin(omega * t + 0.5 * M_PI * static_cast<double>(n));
        return d;
    };
    return traj;
}

DesiredTrajectory make_smoothstep(int n, double amp, double rate, double t0) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument(
            "make_smoothstep: derivatives are coded up to order 3, requested n = " +
            std::to_string(n));
    }
    DesiredTrajectory traj;
    traj.name = "smoothstep";
    traj.eval = [n, amp, rate, t0](double t) {
        const double T = std::tanh(rate * (t - t0));
        const double sech2 = 1.0 - T * T;
        double derivs[4];
        derivs[0] = 0.5 * amp * (1.0 + T);
        derivs[1] = 0.5 * amp * rate * sech2;
        derivs[2] = 0.5 * amp * rate * rate * (-2.0 * T * sech2);
        derivs[3] = 0.5 * amp * rate * rate * rate * (-2.0 * sech2 * (1.0 - 3.0 * T * T));
        DesiredState d;
        d.vector.assign(derivs, derivs + n);
        d.nth_derivative = derivs[n];
        return d;
    };
    return traj;
}

std::vector<BenchmarkCase> benchmark_plants() {
    std::vector<BenchmarkCase> cases;

    {
        BenchmarkCase c;
        DuffingParams p;
        c.plant = make_duffing_plant(p);
        c.uncertainty = make_duffing_uncertainty(p);
        c.trajectory = make_sinusoid(2, 0.8, 0.8);
        c.name = "duffing_n2";
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        Chain3Params p;
        c.plant = make_chain3_plant(p);
        c.uncertainty = make_chain3_uncertainty(p);
        c.trajectory = make_smoothstep(3, 1.0, 1.0, 2.0);
        c.name = "chain_n3";
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        VarGainParams p;
        c.plant = make_vargain_plant(p);
        c.uncertainty = make_vargain_uncertainty(p);
        c.trajectory = make_sinusoid(2, 0.6, 1.2);
        c.name = "vargain_n2";
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace smc
