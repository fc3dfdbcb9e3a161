#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stickslip/stepper.hpp"

namespace stickslip {

/// Canonical demonstration cases: a forced oscillator that never breaks away,
/// a strongly forced one, and two free releases from small and large offsets.
enum class ScenarioId { F1Forced, F2Forced, SmallDisplacement, LargeDisplacement };

std::string to_string(ScenarioId id);
std::optional<ScenarioId> scenario_from_string(const std::string& name);

struct Extremum {
    double t = 0.0;
    double x = 0.0;
};

struct TrajectorySummary {
    State final_state;
    std::vector<Extremum> extrema;
    /// Earliest node time from which the velocity stays zero to the end,
    /// reported only when the run extends at least 0.1 time units past it.
    std::optional<double> rest_time;
    /// Backward-Euler quadrature of the dashpot power F_d v.
    double total_dissipation = 0.0;
    double max_abs_x = 0.0;
    double max_abs_v = 0.0;
    /// Fraction of steps on the stick branch; 1 for an empty step list.
    double stick_fraction = 1.0;
};

struct ScenarioRun {
    Trajectory trajectory;
    TrajectorySummary summary;
};

/// Runs and summarizes one canonical case on its reference parameters
/// (m = 1, k = 100, gamma = 1, threshold = 1, dt = 1e-4).
ScenarioRun run_canonical_case(ScenarioId id, double t_end = 2.0);

/// Explicit RK4 on the naive closed-form model that replaces the dashpot
/// force with sgn(v) threshold + v / gamma (signum zero at v = 0).
///
/// This model is not well posed at v = 0 and is kept as a foil: its velocity
/// chatters around zero instead of reaching rest.  include_viscous = false
/// drops the v / gamma term for the pure dry-friction variant.
Trajectory naive_signum_simulate(const SystemParams& params, const BinghamLaw& law,
                                 const Forcing& forcing, double x0, double v0, double dt,
                                 double t_end, bool include_viscous = true,
                                 std::int64_t max_steps = kDefaultStepBudget);

TrajectorySummary summarize(const Trajectory& traj);

/// Energy balance over the whole run.  closure_error is the absolute
/// imbalance of
///   work_in = spring_delta + kinetic_delta + dissipated
/// with the work and dissipation integrals taken by the same backward-Euler
/// quadrature the stepper uses; the implicit scheme loses energy at first
/// order in dt, so this shrinks linearly with the step.
struct EnergyAudit {
    double work_in = 0.0;
    double spring_delta = 0.0;
    double kinetic_delta = 0.0;
    double dissipated = 0.0;
    double closure_error = 0.0;
};

EnergyAudit energy_audit(const Trajectory& traj, const Forcing& forcing);
EnergyAudit energy_audit(const Trajectory& traj);

} // namespace stickslip
