#include "stickslip/filippov.hpp"

#include <algorithm>
#include <cmath>

namespace stickslip {

FilippovSet filippov_set(const SystemParams& params, const BinghamLaw& law, const State& state,
                         double F_ext) {
    const double elastic = F_ext - state.F_s;
    if (state.v != 0.0) {
        const double F_d = state.v / law.gamma + sign(state.v) * law.threshold;
        return FlowSingleton{(elastic - F_d) / params.m, state.v};
    }
    return AccelInterval{(elastic - law.threshold) / params.m,
                         (elastic + law.threshold) / params.m};
}

ContainsResult contains(const FilippovSet& set, double dv_dt, double dx_dt, double tol) {
    double distance = 0.0;
    if (const auto* point = std::get_if<FlowSingleton>(&set)) {
        distance = std::max(std::abs(dv_dt - point->dv_dt), std::abs(dx_dt - point->dx_dt));
    } else {
        const auto& interval = std::get<AccelInterval>(set);
        const double dv_gap =
            std::max({interval.dv_lo - dv_dt, dv_dt - interval.dv_hi, 0.0});
        distance = std::max(dv_gap, std::abs(dx_dt));
    }
    return {distance <= tol, distance};
}

InclusionReport check_inclusion(const Trajectory& traj, const Forcing& forcing, double tol) {
    if (!std::holds_alternative<BinghamLaw>(traj.law)) {
        throw ValidationError("inclusion check requires the Bingham law");
    }
    const auto& law = std::get<BinghamLaw>(traj.law);

    InclusionReport report;
    report.tol = tol;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        const State& a = traj.states[n];
        const State& b = traj.states[n + 1];
        const double F_ext = eval(forcing, b.t);
        const FilippovSet set = filippov_set(traj.params, law, b, F_ext);

        const double dv_dt = (b.v - a.v) / traj.dt;
        const double dx_dt = (b.x - a.x) / traj.dt;
        const double dx_dt_spring = (b.F_s - a.F_s) / (traj.params.k * traj.dt);

        const ContainsResult primary = contains(set, dv_dt, dx_dt, tol);
        const ContainsResult spring = contains(set, dv_dt, dx_dt_spring, tol);
        const double distance = std::max(primary.distance, spring.distance);

        report.steps_checked += 1;
        report.max_distance = std::max(report.max_distance, distance);
        if (!(primary.inside && spring.inside)) {
            report.violations.push_back({n, distance});
        }
    }
    return report;
}

InclusionReport check_inclusion(const Trajectory& traj, double tol) {
    return check_inclusion(traj, traj.forcing, tol);
}

double default_inclusion_tol(const Trajectory& traj) {
    double max_abs_x = 0.0;
    for (const State& s : traj.states) {
        max_abs_x = std::max(max_abs_x, std::abs(s.x));
    }
    return 1e-8 * std::max(1.0, traj.params.k * max_abs_x / traj.params.m);
}

} // namespace stickslip
