#include "stickslip/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace stickslip {

std::string to_string(ScenarioId id) {
    switch (id) {
    case ScenarioId::F1Forced:
        return "f1";
    case ScenarioId::F2Forced:
        return "f2";
    case ScenarioId::SmallDisplacement:
        return "small";
    case ScenarioId::LargeDisplacement:
        return "large";
    }
    return "unknown";
}

std::optional<ScenarioId> scenario_from_string(const std::string& name) {
    if (name == "f1") {
        return ScenarioId::F1Forced;
    }
    if (name == "f2") {
        return ScenarioId::F2Forced;
    }
    if (name == "small") {
        return ScenarioId::SmallDisplacement;
    }
    if (name == "large") {
        return ScenarioId::LargeDisplacement;
    }
    return std::nullopt;
}

ScenarioRun run_canonical_case(ScenarioId id, double t_end) {
    const SystemParams params(1.0, 100.0);
    const BinghamLaw bingham{1.0, 1.0};
    const double dt = 1e-4;
    const double omega = 5.0 * std::numbers::pi;

    Forcing forcing = ZeroForcing{};
    double x0 = 0.0;
    switch (id) {
    case ScenarioId::F1Forced:
        forcing = WindowedSinusoid{0.5, omega, 1.0};
        break;
    case ScenarioId::F2Forced:
        forcing = WindowedSinusoid{10.0, omega, 1.0};
        break;
    case ScenarioId::SmallDisplacement:
        x0 = 0.005;
        break;
    case ScenarioId::LargeDisplacement:
        x0 = 0.5;
        break;
    }

    const State init = consistent_init(params, DashpotLaw{bingham}, x0);
    ScenarioRun run{simulate(params, DashpotLaw{bingham}, forcing, init, dt, t_end), {}};
    run.summary = summarize(run.trajectory);
    return run;
}

Trajectory naive_signum_simulate(const SystemParams& params, const BinghamLaw& law,
                                 const Forcing& forcing, double x0, double v0, double dt,
                                 double t_end, bool include_viscous, std::int64_t max_steps) {
    ensure_wellformed(DashpotLaw{law});
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    if (!(std::isfinite(t_end) && t_end >= 0.0)) {
        throw ValidationError("t_end must be finite and nonnegative");
    }
    const std::int64_t n_steps = std::llround(t_end / dt);
    if (n_steps > max_steps) {
        throw NumericalError("naive_signum_simulate: step budget exceeded");
    }

    const auto naive_force = [&](double v) {
        double F_d = static_cast<double>(sign(v)) * law.threshold;
        if (include_viscous) {
            F_d += v / law.gamma;
        }
        return F_d;
    };
    const auto accel = [&](double t, double x, double v) {
        return (eval(forcing, t) - params.k * x - naive_force(v)) / params.m;
    };
    const auto record = [&](double t, double x, double v) {
        State s;
        s.t = t;
        s.x = x;
        s.v = v;
        s.F_s = params.k * x;
        s.F_d = naive_force(v);
        return s;
    };

    Trajectory traj{params, DashpotLaw{law}, forcing, dt, {}, {}};
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.modes.reserve(static_cast<std::size_t>(n_steps));

    double x = x0;
    double v = v0;
    traj.states.push_back(record(0.0, x, v));
    for (std::int64_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const double t_next = static_cast<double>(n + 1) * dt;
        const double t_half = t + 0.5 * dt;

        const double k1x = v;
        const double k1v = accel(t, x, v);
        const double k2x = v + 0.5 * dt * k1v;
        const double k2v = accel(t_half, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
        const double k3x = v + 0.5 * dt * k2v;
        const double k3v = accel(t_half, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
        const double k4x = v + dt * k3v;
        const double k4v = accel(t_next, x + dt * k3x, v + dt * k3v);

        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(x) || !std::isfinite(v)) {
            throw NumericalError("naive_signum_simulate: state blew up");
        }

        traj.states.push_back(record(t_next, x, v));
        traj.modes.push_back(v == 0.0 ? StepMode::Stick : StepMode::Slip);
    }
    return traj;
}

TrajectorySummary summarize(const Trajectory& traj) {
    TrajectorySummary summary;
    summary.final_state = traj.states.back();

    for (const State& s : traj.states) {
        summary.max_abs_x = std::max(summary.max_abs_x, std::abs(s.x));
        summary.max_abs_v = std::max(summary.max_abs_v, std::abs(s.v));
    }

    if (!traj.modes.empty()) {
        std::size_t stick_steps = 0;
        for (StepMode mode : traj.modes) {
            if (mode == StepMode::Stick) {
                stick_steps += 1;
            }
        }
        summary.stick_fraction =
            static_cast<double>(stick_steps) / static_cast<double>(traj.modes.size());
    }

    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        const State& b = traj.states[n + 1];
        summary.total_dissipation += b.F_d * b.v * traj.dt;
    }

    // Turning points: consecutive moving nodes with opposite velocity signs
    // bound one extremum.  The displacement update lags the velocity by one
    // node, so the extremal x sits on the last node of the outgoing sign and
    // holds through any zero-velocity plateau; the extremum is stamped on the
    // plateau entry when there is one, else on that last moving node.
    std::size_t prev_moving = traj.states.size();
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        if (traj.states[n].v == 0.0) {
            continue;
        }
        if (prev_moving < n &&
            sign(traj.states[prev_moving].v) != sign(traj.states[n].v)) {
            const std::size_t at = n == prev_moving + 1 ? prev_moving : prev_moving + 1;
            summary.extrema.push_back({traj.states[at].t, traj.states[at].x});
        }
        prev_moving = n;
    }

    // Rest begins where the terminal run of zero velocities starts; a run
    // shorter than 0.1 time units is not enough evidence to call it rest.
    if (summary.final_state.v == 0.0) {
        std::size_t idx = traj.states.size() - 1;
        while (idx > 0 && traj.states[idx - 1].v == 0.0) {
            idx -= 1;
        }
        if (summary.final_state.t - traj.states[idx].t >= 0.1) {
            summary.rest_time = traj.states[idx].t;
        }
    }
    return summary;
}

EnergyAudit energy_audit(const Trajectory& traj, const Forcing& forcing) {
    EnergyAudit audit;
    const State& first = traj.states.front();
    const State& last = traj.states.back();

    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        const State& b = traj.states[n + 1];
        const double F_ext = eval(forcing, b.t);
        audit.work_in += F_ext * b.v * traj.dt;
        audit.dissipated += b.F_d * b.v * traj.dt;
    }
    audit.spring_delta =
        (last.F_s * last.F_s - first.F_s * first.F_s) / (2.0 * traj.params.k);
    audit.kinetic_delta = 0.5 * traj.params.m * (last.v * last.v - first.v * first.v);
    audit.closure_error = std::abs(audit.work_in - audit.spring_delta - audit.kinetic_delta -
                                   audit.dissipated);
    return audit;
}

EnergyAudit energy_audit(const Trajectory& traj) {
    return energy_audit(traj, traj.forcing);
}

} // namespace stickslip
