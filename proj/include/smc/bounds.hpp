#pragma once

#include <span>
#include <string>
#include <vector>

#include "smc/surface.hpp"

namespace smc {

/// Exact integer type for the convergence-region multipliers. They grow fast
/// (1, 2, 6, 26, 150, ...) and overflow 64 bits before order 20, so they are
/// kept in 128 bits and converted to double only when combined with the
/// lambda powers and the layer thickness.
using ZetaInt = __int128;

std::string zeta_to_string(ZetaInt value);

/// Corrected multipliers zeta_i next to the classical 2^i sequence.
///
/// zeta_0 = 1, zeta_i = 1 + sum_{j<i} C(i,j) zeta_j. The two sequences agree
/// for i <= 1 and diverge from i = 2 on (6 vs 4).
struct ZetaTable {
    int order_n = 0;
    std::vector<ZetaInt> zeta;
    std::vector<ZetaInt> slotine;

    /// Smallest index where the sequences differ, or -1 when they agree
    /// everywhere (order <= 2).
    int first_divergent_index() const;
};

/// Exact tables for 1 <= n <= kMaxOrder; throws std::invalid_argument outside
/// that range.
ZetaTable zeta_table(int n);

/// Steady-state convergence region: the boundary layer |s| <= phi intersected
/// with the box |err[i]| <= per_derivative_bounds[i].
struct ConvergenceRegion {
    SurfaceSpec surface;
    double phi = 0.0;
    std::vector<double> per_derivative_bounds;
};

/// Box edge i = zeta_i * lambda^(i-n+1) * phi.
ConvergenceRegion region(const SurfaceSpec& spec, double phi);

/// Same with 2^i in place of zeta_i; provided for the comparison study only.
ConvergenceRegion slotine_region(const SurfaceSpec& spec, double phi);

struct ContainsResult {
    bool inside = false;
    /// phi - |s(err)|; negative outside the layer.
    double layer_margin = 0.0;
    /// bound_i - |err[i]| per axis; negative outside the box.
    std::vector<double> axis_margins;
};

/// Membership requires both the layer and every box bound.
ContainsResult contains(const ConvergenceRegion& reg, std::span<const double> err);

}  // namespace smc
