#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stickslip/forcing.hpp"
#include "stickslip/system.hpp"

namespace stickslip {

/// Branch taken by the corrector.  Stick pins the velocity to zero; Slip
/// resolves it from the dashpot law.
enum class StepMode : unsigned char { Stick, Slip };

std::string to_string(StepMode mode);

/// Constants of one backward-Euler step that depend only on the system,
/// the law and the step size.
///
///   A = 1 + dt^2 k / m        weight of the implicit spring update
///   D = gamma A + dt / m      slip-branch denominator
struct StepCoefficients {
    double A = 0.0;
    double D = 0.0;
    double dt = 0.0;
};

StepCoefficients step_coefficients(const SystemParams& params, const BinghamLaw& law, double dt);

/// Trial force m v_n / dt + F(t_{n+1}) - F_s^(n): the dashpot force that
/// would freeze the mass over this step.
double predictor(const SystemParams& params, const State& state_n, double F_next, double dt);

struct CorrectorResult {
    double v = 0.0;
    double F_d = 0.0;
    StepMode mode = StepMode::Stick;
};

/// Closed-form corrector for the Bingham law.
///
/// When the trial force fits inside the threshold it is taken verbatim and
/// the velocity is zero.  Otherwise the excess over the threshold is
/// resolved:
///
///   e   = (dt / m) (Ftilde - s T) / D      with s = sign(Ftilde), T = threshold
///   F_d = s T + e
///   v   = gamma e
///
/// e carries the sign of Ftilde, so sign(v) = sign(Ftilde) holds exactly.
CorrectorResult corrector_bingham(const SystemParams& params, const BinghamLaw& law,
                                  double Ftilde, double dt);

/// Corrector for any monotone dashpot law, by root finding on
///
///   h(F_d) = A g(F_d) + (dt / m) (F_d - Ftilde)
///
/// h is strictly increasing and changes sign on [min(0, Ftilde), max(0, Ftilde)].
/// When g(Ftilde) is already zero the trial force itself is the root and the
/// step sticks.  A solved velocity within 1e-14 of zero on the law's own
/// velocity scale is snapped to an exact stick.
CorrectorResult corrector_generic(const SystemParams& params, const DashpotLaw& law,
                                  double Ftilde, double dt);

struct StepResult {
    State state;
    StepMode mode = StepMode::Stick;
};

/// One backward-Euler step from state_n under external force F_next at the
/// new time.  Picks the closed-form corrector for the Bingham law and the
/// root-finding corrector otherwise.
StepResult step(const SystemParams& params, const DashpotLaw& law, const State& state_n,
                double F_next, double dt);

/// A computed trajectory together with everything needed to recheck it.
struct Trajectory {
    SystemParams params;
    DashpotLaw law;
    Forcing forcing;
    double dt = 0.0;
    std::vector<State> states;
    /// modes[n] is the branch taken on the step from node n to n + 1, so
    /// modes.size() == states.size() - 1.
    std::vector<StepMode> modes;
};

inline constexpr std::int64_t kDefaultStepBudget = 10'000'000;

/// Integrates from init to t_end on the uniform grid t_n = t0 + n dt.
Trajectory simulate(const SystemParams& params, const DashpotLaw& law, const Forcing& forcing,
                    const State& init, double dt, double t_end,
                    std::int64_t max_steps = kDefaultStepBudget);

/// Worst violations of the discrete update equations over a trajectory,
/// recomputed from the stored states alone.  The momentum residual is in
/// acceleration units, the spring residual in force per time, the
/// constitutive residual in velocity.
struct ResidualReport {
    double max_momentum_residual = 0.0;
    double max_spring_residual = 0.0;
    double max_constitutive_residual = 0.0;
    std::size_t worst_step_index = 0;

    double max_residual() const noexcept;
};

ResidualReport residual_check(const Trajectory& traj, const Forcing& forcing);
ResidualReport residual_check(const Trajectory& traj);

struct ConvergencePoint {
    double dt = 0.0;
    double error = 0.0;
    /// Order estimated against the previous (coarser) point; absent for the
    /// first point or when an error vanishes.
    std::optional<double> observed_order;
};

/// Error of each step size against a reference run at min(dt_list) / 10,
/// measured as the max |x - x_ref| over the coarse grid nodes.
std::vector<ConvergencePoint> convergence_study(const SystemParams& params, const DashpotLaw& law,
                                                const Forcing& forcing, const State& init,
                                                double t_end, const std::vector<double>& dt_list,
                                                std::int64_t max_steps = kDefaultStepBudget);

} // namespace stickslip
