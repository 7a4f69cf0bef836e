#include "smc/surface.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smc {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::vector<std::int64_t> binomial_coefficients(int n) {
    require(n >= 1, "binomial_coefficients: n must be >= 1, got " + std::to_string(n));
    require(n <= kMaxOrder,
            "binomial_coefficients: n must be <= " + std::to_string(kMaxOrder) + ", got " +
                std::to_string(n));

    // Multiplicative recurrence C(m,i) = C(m,i-1) * (m-i+1) / i; the division
    // is always exact. Overflow is checked rather than wrapped.
    const std::int64_t m = n - 1;
    std::vector<std::int64_t> row(static_cast<std::size_t>(n));
    row[0] = 1;
    for (std::int64_t i = 1; i <= m; ++i) {
        std::int64_t scaled = 0;
        if (__builtin_mul_overflow(row[static_cast<std::size_t>(i - 1)], m - i + 1, &scaled)) {
            throw std::invalid_argument("binomial_coefficients: 64-bit overflow at n = " +
                                        std::to_string(n));
        }
        row[static_cast<std::size_t>(i)] = scaled / i;
    }
    return row;
}

double lambda_power(double lambda, int k) {
    if (k < 0) return 1.0 / lambda_power(lambda, -k);
    double result = 1.0;
    for (int i = 0; i < k; ++i) result *= lambda;
    return result;
}

SurfaceSpec make_surface(int n, double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0,
            "make_surface: lambda must be a positive real, got " + std::to_string(lambda));
    const auto binoms = binomial_coefficients(n);  // validates n

    SurfaceSpec spec;
    spec.order_n = n;
    spec.lambda = lambda;
    spec.coeffs_c.resize(static_cast<std::size_t>(n));
    spec.coeffs_cbar.resize(static_cast<std::size_t>(n));

    // coeffs_c[k] = C(n-1, n-1-k) lambda^(n-1-k); the k = n-1 entry is the
    // exact constant 1.
    for (int k = 0; k < n; ++k) {
        const int power = n - 1 - k;
        spec.coeffs_c[static_cast<std::size_t>(k)] =
            static_cast<double>(binoms[static_cast<std::size_t>(power)]) *
            lambda_power(lambda, power);
    }
    spec.coeffs_cbar[0] = 0.0;
    for (int k = 1; k < n; ++k) {
        spec.coeffs_cbar[static_cast<std::size_t>(k)] = spec.coeffs_c[static_cast<std::size_t>(k - 1)];
    }
    return spec;
}

namespace {

void require_length(const SurfaceSpec& spec, std::span<const double> err, const char* op) {
    if (static_cast<int>(err.size()) != spec.order_n) {
        throw std::invalid_argument(std::string(op) + ": error vector has length " +
                                    std::to_string(err.size()) + ", surface order is " +
                                    std::to_string(spec.order_n));
    }
}

}  // namespace

double surface_value(const SurfaceSpec& spec, std::span<const double> err) {
    require_length(spec, err, "surface_value");
    double s = 0.0;
    for (std::size_t k = 0; k < err.size(); ++k) s += spec.coeffs_c[k] * err[k];
    return s;
}

double surface_rate(const SurfaceSpec& spec, std::span<const double> err, double err_n) {
    require_length(spec, err, "surface_rate");
    double rate = err_n;
    for (std::size_t k = 0; k < err.size(); ++k) rate += spec.coeffs_cbar[k] * err[k];
    return rate;
}

double boundary_distance(double s, double phi) {
    require(std::isfinite(phi) && phi > 0.0,
            "boundary_distance: phi must be a positive real, got " + std::to_string(phi));
    if (std::abs(s) <= phi) return 0.0;
    return s > 0.0 ? s - phi : s + phi;
}

}  // namespace smc
