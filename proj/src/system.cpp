#include "stickslip/system.hpp"

#include <cmath>
#include <sstream>

namespace stickslip {

ValidationReport check_state(const SystemParams& params, const DashpotLaw& law,
                             const State& state) {
    ValidationReport report;
    for (double value : {state.t, state.x, state.v, state.F_s, state.F_d}) {
        if (!std::isfinite(value)) {
            report.findings.push_back("state has a non-finite component");
            return report;
        }
    }

    const double x_from_spring = spring_displacement(params, state.F_s);
    const double coupling = std::abs(state.x - x_from_spring);
    if (coupling > 1e-14 * std::max({1.0, std::abs(state.x), std::abs(x_from_spring)})) {
        std::ostringstream os;
        os << "x and F_s disagree: x = " << state.x << ", F_s / k = " << x_from_spring;
        report.findings.push_back(os.str());
    }

    const double residual = dashpot_residual(law, state.v, state.F_d);
    if (std::abs(residual) > 1e-12 * std::max(1.0, velocity_scale(law))) {
        std::ostringstream os;
        os << "v and F_d violate the dashpot law, residual = " << residual;
        report.findings.push_back(os.str());
    }
    return report;
}

State consistent_init(const SystemParams& params, const DashpotLaw& law, double x0,
                      std::optional<double> F_d0, std::optional<double> v0, double t0) {
    ensure_wellformed(law);
    if (!std::isfinite(x0) || !std::isfinite(t0)) {
        throw ValidationError("x0 and t0 must be finite");
    }

    State state;
    state.t = t0;
    state.x = x0;
    state.F_s = params.k * x0;

    if (F_d0 && v0) {
        const double residual = dashpot_residual(law, *v0, *F_d0);
        if (std::abs(residual) > 1e-12 * std::max(1.0, velocity_scale(law))) {
            std::ostringstream os;
            os << "F_d0 and v0 are inconsistent with the dashpot law, residual = " << residual;
            throw ValidationError(os.str());
        }
        state.F_d = *F_d0;
        state.v = *v0;
    } else if (F_d0) {
        state.F_d = *F_d0;
        state.v = velocity_from_force(law, *F_d0);
    } else if (v0 && *v0 != 0.0) {
        state.v = *v0;
        state.F_d = force_from_velocity(law, *v0);
    } else {
        // At rest (or nothing given) the dashpot starts unloaded.
        state.v = 0.0;
        state.F_d = 0.0;
    }

    const auto report = check_state(params, law, state);
    if (!report.ok()) {
        throw ValidationError("initial state is inconsistent: " + report.joined());
    }
    return state;
}

OdeRates rhs_ode_part(const SystemParams& params, const State& state, double F_ext) {
    OdeRates rates;
    rates.dv_dt = (F_ext - state.F_s - state.F_d) / params.m;
    rates.dFs_dt = params.k * state.v;
    return rates;
}

EquilibriumInterval equilibrium_interval(const SystemParams& params, const BinghamLaw& law,
                                         double F_ext) {
    return {(F_ext - law.threshold) / params.k, (F_ext + law.threshold) / params.k};
}

bool is_equilibrium(const SystemParams& params, const BinghamLaw& law, const State& state,
                    double F_ext) {
    if (state.v != 0.0) {
        return false;
    }
    const auto interval = equilibrium_interval(params, law, F_ext);
    return interval.x_lo <= state.x && state.x <= interval.x_hi;
}

} // namespace stickslip
