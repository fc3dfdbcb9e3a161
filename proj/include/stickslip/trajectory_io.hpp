#pragma once

#include <iosfwd>
#include <string>

#include "stickslip/stepper.hpp"

namespace stickslip {

/// Decimal form with enough digits (17 significant) to reparse to the same
/// binary64 value.
std::string fmt17(double value);

/// Writes a trajectory as CSV: comment lines carrying the system description,
/// a `t,x,v,Fs,Fd,F,mode` header, then one row per node.  The first row's
/// mode is `init`; later rows carry the branch of the step that produced them.
///
/// Values are written with enough digits to round-trip exactly.  Generic laws
/// have no serial form; their files cannot be read back.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reads a trajectory written by write_trajectory_csv.  The forcing is
/// rebuilt from the F column by linear interpolation through the nodes, which
/// reproduces the written values exactly at the node times.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::string& path);

} // namespace stickslip
