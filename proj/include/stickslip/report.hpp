#pragma once

#include <iosfwd>
#include <string>

#include "stickslip/filippov.hpp"
#include "stickslip/scenarios.hpp"

namespace stickslip {

/// Flat `key = value` digest of a run: final state, summary statistics,
/// residual and inclusion maxima, energy balance.  Key order is fixed so
/// reports diff cleanly.  inclusion may be null when the law admits no
/// inclusion check.
void write_summary(std::ostream& out, const Trajectory& traj, const TrajectorySummary& summary,
                   const ResidualReport& residuals, const InclusionReport* inclusion,
                   const EnergyAudit& energy);

void write_summary(const std::string& path, const Trajectory& traj,
                   const TrajectorySummary& summary, const ResidualReport& residuals,
                   const InclusionReport* inclusion, const EnergyAudit& energy);

} // namespace stickslip
