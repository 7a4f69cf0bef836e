#include "smc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smc {

std::string zeta_to_string(ZetaInt value) {
    if (value == 0) return "0";
    const bool negative = value < 0;
    unsigned __int128 v =
        negative ? -static_cast<unsigned __int128>(value) : static_cast<unsigned __int128>(value);
    std::string digits;
    while (v != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

int ZetaTable::first_divergent_index() const {
    for (int i = 0; i < order_n; ++i) {
        if (zeta[static_cast<std::size_t>(i)] != slotine[static_cast<std::size_t>(i)]) return i;
    }
    return -1;
}

ZetaTable zeta_table(int n) {
    if (n < 1 || n > kMaxOrder) {
        throw std::invalid_argument("zeta_table: n must be in [1, " + std::to_string(kMaxOrder) +
                                    "], got " + std::to_string(n));
    }
    ZetaTable table;
    table.order_n = n;
    table.zeta.resize(static_cast<std::size_t>(n));
    table.slotine.resize(static_cast<std::size_t>(n));
    table.zeta[0] = 1;
    table.slotine[0] = 1;
    for (int i = 1; i < n; ++i) {
        // C(i,j) via the multiplicative recurrence, exact in 128 bits.
        ZetaInt binom = 1;
        ZetaInt acc = 1;  // the standalone +1 of the recursion
        for (int j = 0; j < i; ++j) {
            if (j > 0) binom = binom * (i - j + 1) / j;
            acc += binom * table.zeta[static_cast<std::size_t>(j)];
        }
        table.zeta[static_cast<std::size_t>(i)] = acc;
        table.slotine[static_cast<std::size_t>(i)] = ZetaInt(1) << i;
    }
    return table;
}

namespace {

ConvergenceRegion build_region(const SurfaceSpec& spec, double phi,
                               const std::vector<ZetaInt>& multipliers) {
    if (!(std::isfinite(phi) && phi > 0.0)) {
        throw std::invalid_argument("region: phi must be a positive real, got " +
                                    std::to_string(phi));
    }
    ConvergenceRegion reg;
    reg.surface = spec;
    reg.phi = phi;
    reg.per_derivative_bounds.resize(static_cast<std::size_t>(spec.order_n));
    for (int i = 0; i < spec.order_n; ++i) {
        reg.per_derivative_bounds[static_cast<std::size_t>(i)] =
            static_cast<double>(multipliers[static_cast<std::size_t>(i)]) *
            lambda_power(spec.lambda, i - spec.order_n + 1) * phi;
    }
    return reg;
}

}  // namespace

ConvergenceRegion region(const SurfaceSpec& spec, double phi) {
    return build_region(spec, phi, zeta_table(spec.order_n).zeta);
}

ConvergenceRegion slotine_region(const SurfaceSpec& spec, double phi) {
    return build_region(spec, phi, zeta_table(spec.order_n).slotine);
}

ContainsResult contains(const ConvergenceRegion& reg, std::span<const double> err) {
    if (static_cast<int>(err.size()) != reg.surface.order_n) {
        throw std::invalid_argument("contains: error vector has length " +
                                    std::to_string(err.size()) + ", region order is " +
                                    std::to_string(reg.surface.order_n));
    }
    ContainsResult result;
    result.layer_margin = reg.phi - std::abs(surface_value(reg.surface, err));
    result.inside = result.layer_margin >= 0.0;
    result.axis_margins.resize(err.size());
    for (std::size_t i = 0; i < err.size(); ++i) {
        result.axis_margins[i] = reg.per_derivative_bounds[i] - std::abs(err[i]);
        if (result.axis_margins[i] < 0.0) result.inside = false;
    }
    return result;
}

}  // namespace smc
