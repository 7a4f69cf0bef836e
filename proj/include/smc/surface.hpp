#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace smc {

/// Highest system order supported by the exact-integer coefficient tables.
constexpr int kMaxOrder = 20;

/// Sliding-surface description for an n-th order tracking problem.
///
/// The surface is s(err) = coeffs_c . err, where err[i] holds the i-th time
/// derivative of the tracking error. coeffs_c pairs the highest lambda power
/// with the raw error:
///
///   coeffs_c    = [C(n-1,n-1) lambda^(n-1), ..., C(n-1,1) lambda, 1]
///   coeffs_cbar = [0, C(n-1,n-1) lambda^(n-1), ..., C(n-1,1) lambda]
///
/// so that ds/dt = err_n + coeffs_cbar . err. The last entry of coeffs_c is
/// exactly 1 and the first entry of coeffs_cbar is exactly 0 for every order.
/// All roots of the associated characteristic polynomial sit at -lambda.
struct SurfaceSpec {
    int order_n = 0;
    double lambda = 0.0;
    std::vector<double> coeffs_c;
    std::vector<double> coeffs_cbar;
};

/// Row n-1 of Pascal's triangle, [C(n-1,0), ..., C(n-1,n-1)], computed
/// exactly via the multiplicative recurrence. Throws std::invalid_argument
/// for n < 1, n > kMaxOrder, or on 64-bit overflow (never silently wraps).
std::vector<std::int64_t> binomial_coefficients(int n);

/// Build the surface for (d/dt + lambda)^(n-1) applied to the tracking error.
SurfaceSpec make_surface(int n, double lambda);

/// s = coeffs_c . err. Throws on length mismatch.
double surface_value(const SurfaceSpec& spec, std::span<const double> err);

/// ds/dt = err_n + coeffs_cbar . err, with err_n the n-th error derivative.
double surface_rate(const SurfaceSpec& spec, std::span<const double> err, double err_n);

/// Distance to the boundary layer, s - phi * sat(s/phi): zero when |s| <= phi,
/// s - phi*sgn(s) otherwise. Continuous in s. Requires phi > 0.
double boundary_distance(double s, double phi);

/// lambda^k for signed integer exponents (used for the per-derivative bound
/// weights lambda^(i-n+1)).
double lambda_power(double lambda, int k);

}  // namespace smc
