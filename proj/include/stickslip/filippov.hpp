#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "stickslip/stepper.hpp"

namespace stickslip {

/// Unique admissible rate pair at a state with nonzero velocity.
struct FlowSingleton {
    double dv_dt = 0.0;
    double dx_dt = 0.0;
};

/// Admissible accelerations at rest, where the dashpot force may take any
/// value inside the threshold.  dx/dt is zero throughout the interval.
struct AccelInterval {
    double dv_lo = 0.0;
    double dv_hi = 0.0;
};

using FilippovSet = std::variant<FlowSingleton, AccelInterval>;

/// Admissible rates at a state under external force F_ext.
FilippovSet filippov_set(const SystemParams& params, const BinghamLaw& law, const State& state,
                         double F_ext);

struct ContainsResult {
    bool inside = false;
    /// Max-norm distance from the rate pair to the set; zero when inside.
    double distance = 0.0;
};

/// Whether (dv_dt, dx_dt) lies within tol of the set.
ContainsResult contains(const FilippovSet& set, double dv_dt, double dx_dt, double tol);

struct InclusionViolation {
    std::size_t step = 0;
    double distance = 0.0;
};

struct InclusionReport {
    std::size_t steps_checked = 0;
    double tol = 0.0;
    double max_distance = 0.0;
    std::vector<InclusionViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks every step's backward-difference rates against the admissible set
/// at the arrival state.  The displacement rate is checked both from x and
/// from F_s / k, so drift between the two copies is caught as well.
///
/// Only trajectories under the Bingham law can be checked; anything else
/// raises a validation error.
InclusionReport check_inclusion(const Trajectory& traj, const Forcing& forcing, double tol);
InclusionReport check_inclusion(const Trajectory& traj, double tol);

/// Tolerance matched to the trajectory's own scale: 1e-8 times the largest
/// acceleration magnitude the spring alone could produce, floored at 1e-8.
double default_inclusion_tol(const Trajectory& traj);

} // namespace stickslip
