#pragma once

#include <string>

#include "smc/bounds.hpp"
#include "smc/plant.hpp"
#include "smc/witness.hpp"

namespace smc {

/// Floating-point field formatting used by every CSV writer: 17 significant
/// digits, enough to round-trip a double exactly.
std::string format_double(double v);

/// TrajectoryLog serialization, header
/// t,x0..x{n-1},xd0..xd{n-1},s,s_phi,K,u,V.
std::string trajectory_csv(const TrajectoryLog& log);

/// Reaching-phase view: t, |s_phi| and the straight-line envelope
/// |s_phi(0)| - eta t.
std::string envelope_csv(const TrajectoryLog& log, double eta);

/// Planar geometry of the convergence region for n = 2: the per-derivative
/// box, the boundary-layer strip (clipped to a frame 1.5x the box) and their
/// intersection, as shape,idx,e0,e1 polygon vertex rows.
std::string region_csv(const ConvergenceRegion& reg);

std::string witness_trace_csv(const WitnessTrace& trace);

void write_file(const std::string& path, const std::string& contents);

}  // namespace smc
