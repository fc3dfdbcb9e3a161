#pragma once

#include <optional>

#include "stickslip/constitutive.hpp"

namespace stickslip {

/// Instantaneous state of the oscillator.  x and F_s are redundant through
/// x = F_s / k; both are carried so either can be read without a divide.
struct State {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
    double F_s = 0.0;
    double F_d = 0.0;
};

/// Time-derivative pair supplied by the differential part of the model.  The
/// dashpot force has no derivative of its own; it is pinned algebraically.
struct OdeRates {
    double dv_dt = 0.0;
    double dFs_dt = 0.0;
};

/// Closed set of rest positions compatible with a constant external force.
struct EquilibriumInterval {
    double x_lo = 0.0;
    double x_hi = 0.0;
};

/// Internal consistency of a state: x must agree with F_s / k and (v, F_d)
/// must satisfy the dashpot law.
ValidationReport check_state(const SystemParams& params, const DashpotLaw& law,
                             const State& state);

/// Builds a consistent initial state at time t0 from a displacement and an
/// optional dashpot force or velocity.
///
/// Exactly the given data is honoured: with both F_d0 and v0 present they must
/// already satisfy the law; with only one present the other is completed
/// through the law; with neither, the dashpot starts unloaded at rest.
State consistent_init(const SystemParams& params, const DashpotLaw& law, double x0,
                      std::optional<double> F_d0 = std::nullopt,
                      std::optional<double> v0 = std::nullopt, double t0 = 0.0);

/// Right-hand side of the differential equations for a given external force.
OdeRates rhs_ode_part(const SystemParams& params, const State& state, double F_ext);

/// Rest positions x with |F_ext - k x| <= threshold.
EquilibriumInterval equilibrium_interval(const SystemParams& params, const BinghamLaw& law,
                                         double F_ext);

/// True when the state is at rest inside the equilibrium interval.
bool is_equilibrium(const SystemParams& params, const BinghamLaw& law, const State& state,
                    double F_ext);

} // namespace stickslip
