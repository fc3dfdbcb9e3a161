#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "stickslip/errors.hpp"

namespace stickslip {

/// Sign convention used throughout the library: sign(0) = 0.
[[nodiscard]] constexpr int sign(double x) noexcept {
    return (x > 0.0) - (x < 0.0);
}

/// Mass and spring stiffness of the lumped system.
/// Construction rejects non-positive values.
struct SystemParams {
    double m;
    double k;

    SystemParams(double mass, double stiffness);
};

/// Threshold dashpot law: the velocity is zero while |F_d| <= threshold
/// and grows linearly in the excess force beyond the threshold,
///
///     v(F_d) = 0                                  |F_d| <= threshold
///            = gamma * (F_d - sign(F_d)*threshold)  otherwise.
///
/// gamma must be > 0 and threshold >= 0. The force-from-velocity
/// direction is set-valued at v = 0 (any |F_d| <= threshold qualifies).
struct BinghamLaw {
    double gamma;
    double threshold;
};

/// Linear viscous dashpot written velocity-explicit: v = F_d / c, c > 0.
struct LinearViscousLaw {
    double c;
};

/// User-supplied monotone velocity-from-force map g.
///
/// Requirements on g: g(0) = 0, g nondecreasing, F * g(F) >= 0. Full
/// monotonicity of an arbitrary callable is not decidable, so
/// law_wellformed() checks these on a 257-point grid over
/// [-validation_halfwidth, +validation_halfwidth]; the check is
/// best-effort by construction.
struct GenericMonotoneLaw {
    std::function<double(double)> g;
    double validation_halfwidth = 10.0;
    /// Velocity magnitude below which a solved velocity counts as stick.
    double velocity_scale = 1.0;
};

using DashpotLaw = std::variant<BinghamLaw, LinearViscousLaw, GenericMonotoneLaw>;

/// Findings accumulated while validating a law or a state.
struct ValidationReport {
    std::vector<std::string> findings;

    [[nodiscard]] bool ok() const noexcept { return findings.empty(); }
    [[nodiscard]] std::string joined() const;
};

/// Velocity across a threshold dashpot carrying force F_d. Total; the
/// stick branch returns exactly 0.
[[nodiscard]] double bingham_velocity(const BinghamLaw& law, double F_d) noexcept;

/// Slip-branch inverse: the force that makes the dashpot move at
/// velocity v != 0. Throws SetValuedError at v = 0, where the inverse is
/// the whole interval [-threshold, +threshold].
[[nodiscard]] double bingham_force_from_velocity(const BinghamLaw& law, double v);

/// Velocity-from-force map of any law variant.
[[nodiscard]] double velocity_from_force(const DashpotLaw& law, double F_d);

/// Force-from-velocity inverse of any law variant, v != 0. For generic
/// laws the inverse is found by bracketed root finding and may throw
/// NumericalError if g never reaches v.
[[nodiscard]] double force_from_velocity(const DashpotLaw& law, double v);

/// Residual of the constitutive constraint: v - g_law(F_d). Zero iff the
/// pair satisfies the law.
[[nodiscard]] double dashpot_residual(const DashpotLaw& law, double v, double F_d);

/// Spring displacement under force F_s: x = F_s / k.
[[nodiscard]] double spring_displacement(const SystemParams& params, double F_s) noexcept;

/// Reports every violated law invariant. Generic laws are sampled on a
/// 257-point grid; see GenericMonotoneLaw.
[[nodiscard]] ValidationReport law_wellformed(const DashpotLaw& law);

/// Throws ValidationError listing all findings if the law is not well formed.
void ensure_wellformed(const DashpotLaw& law);

/// Characteristic velocity magnitude of a law, used for stick detection
/// in the generic corrector. Bingham: gamma * threshold; generic laws
/// carry their own scale; linear laws default to 1.
[[nodiscard]] double velocity_scale(const DashpotLaw& law) noexcept;

} // namespace stickslip
