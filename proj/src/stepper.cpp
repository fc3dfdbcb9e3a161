#include "stickslip/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "stickslip/root_finding.hpp"

namespace stickslip {

std::string to_string(StepMode mode) {
    return mode == StepMode::Stick ? "stick" : "slip";
}

StepCoefficients step_coefficients(const SystemParams& params, const BinghamLaw& law, double dt) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    StepCoefficients coeffs;
    coeffs.dt = dt;
    coeffs.A = 1.0 + dt * dt * params.k / params.m;
    coeffs.D = law.gamma * coeffs.A + dt / params.m;
    return coeffs;
}

double predictor(const SystemParams& params, const State& state_n, double F_next, double dt) {
    return params.m * state_n.v / dt + F_next - state_n.F_s;
}

CorrectorResult corrector_bingham(const SystemParams& params, const BinghamLaw& law,
                                  double Ftilde, double dt) {
    CorrectorResult out;
    if (std::abs(Ftilde) <= law.threshold) {
        out.v = 0.0;
        out.F_d = Ftilde;
        out.mode = StepMode::Stick;
        return out;
    }
    const auto coeffs = step_coefficients(params, law, dt);
    const double s = static_cast<double>(sign(Ftilde));
    const double excess = (dt / params.m) * (Ftilde - s * law.threshold) / coeffs.D;
    out.F_d = s * law.threshold + excess;
    out.v = law.gamma * excess;
    out.mode = StepMode::Slip;
    return out;
}

CorrectorResult corrector_generic(const SystemParams& params, const DashpotLaw& law,
                                  double Ftilde, double dt) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    CorrectorResult out;
    if (velocity_from_force(law, Ftilde) == 0.0) {
        // h(Ftilde) vanishes exactly, so the trial force is the root.
        out.v = 0.0;
        out.F_d = Ftilde;
        out.mode = StepMode::Stick;
        return out;
    }

    const double A = 1.0 + dt * dt * params.k / params.m;
    const double dt_over_m = dt / params.m;
    const auto h = [&](double F_d) {
        return A * velocity_from_force(law, F_d) + dt_over_m * (F_d - Ftilde);
    };
    RootOptions opts;
    opts.f_tol = 1e-12 * std::max(1.0, std::abs(Ftilde));
    const auto root =
        find_root_bracketed(h, std::min(0.0, Ftilde), std::max(0.0, Ftilde), opts);

    out.F_d = root.x;
    out.v = velocity_from_force(law, root.x);
    if (std::abs(out.v) <= 1e-14 * velocity_scale(law)) {
        out.v = 0.0;
    }
    out.mode = out.v == 0.0 ? StepMode::Stick : StepMode::Slip;
    return out;
}

StepResult step(const SystemParams& params, const DashpotLaw& law, const State& state_n,
                double F_next, double dt) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    const double Ftilde = predictor(params, state_n, F_next, dt);

    CorrectorResult corrected;
    if (const auto* bingham = std::get_if<BinghamLaw>(&law)) {
        corrected = corrector_bingham(params, *bingham, Ftilde, dt);
    } else {
        corrected = corrector_generic(params, law, Ftilde, dt);
    }

    StepResult result;
    result.mode = corrected.mode;
    result.state.t = state_n.t + dt;
    result.state.v = corrected.v;
    result.state.F_d = corrected.F_d;
    result.state.F_s = state_n.F_s + dt * params.k * corrected.v;
    result.state.x = result.state.F_s / params.k;
    return result;
}

Trajectory simulate(const SystemParams& params, const DashpotLaw& law, const Forcing& forcing,
                    const State& init, double dt, double t_end, std::int64_t max_steps) {
    ensure_wellformed(law);
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    if (!(std::isfinite(t_end) && t_end >= init.t)) {
        throw ValidationError("t_end must be finite and not precede the initial time");
    }
    {
        const auto report = check_state(params, law, init);
        if (!report.ok()) {
            throw ValidationError("initial state is inconsistent: " + report.joined());
        }
    }

    const double t0 = init.t;
    const std::int64_t n_steps = std::llround((t_end - t0) / dt);
    if (n_steps > max_steps) {
        throw NumericalError("simulate: step budget exceeded; raise max_steps or coarsen dt");
    }

    Trajectory traj{params, law, forcing, dt, {}, {}};
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.modes.reserve(static_cast<std::size_t>(n_steps));
    traj.states.push_back(init);

    for (std::int64_t n = 0; n < n_steps; ++n) {
        // Node times come from the grid formula, not accumulation, so forcing
        // lookups and stored times agree bit for bit across runs.
        const double t_next = t0 + static_cast<double>(n + 1) * dt;
        const double F_next = eval(forcing, t_next);
        StepResult r = step(params, law, traj.states.back(), F_next, dt);
        r.state.t = t_next;
        traj.states.push_back(r.state);
        traj.modes.push_back(r.mode);
    }
    return traj;
}

double ResidualReport::max_residual() const noexcept {
    return std::max({max_momentum_residual, max_spring_residual, max_constitutive_residual});
}

ResidualReport residual_check(const Trajectory& traj, const Forcing& forcing) {
    ResidualReport report;
    double worst = -1.0;
    for (std::size_t n = 0; n + 1 < traj.states.size(); ++n) {
        const State& a = traj.states[n];
        const State& b = traj.states[n + 1];
        const double F_next = eval(forcing, b.t);

        const double momentum = std::abs((b.v - a.v) / traj.dt -
                                         (F_next - b.F_s - b.F_d) / traj.params.m);
        const double spring = std::abs((b.F_s - a.F_s) / traj.dt - traj.params.k * b.v);
        const double constitutive = std::abs(dashpot_residual(traj.law, b.v, b.F_d));

        report.max_momentum_residual = std::max(report.max_momentum_residual, momentum);
        report.max_spring_residual = std::max(report.max_spring_residual, spring);
        report.max_constitutive_residual =
            std::max(report.max_constitutive_residual, constitutive);
        const double local = std::max({momentum, spring, constitutive});
        if (local > worst) {
            worst = local;
            report.worst_step_index = n;
        }
    }
    return report;
}

ResidualReport residual_check(const Trajectory& traj) {
    return residual_check(traj, traj.forcing);
}

std::vector<ConvergencePoint> convergence_study(const SystemParams& params, const DashpotLaw& law,
                                                const Forcing& forcing, const State& init,
                                                double t_end, const std::vector<double>& dt_list,
                                                std::int64_t max_steps) {
    if (dt_list.empty()) {
        throw ValidationError("convergence_study needs at least one step size");
    }
    for (std::size_t i = 0; i < dt_list.size(); ++i) {
        if (!(std::isfinite(dt_list[i]) && dt_list[i] > 0.0)) {
            throw ValidationError("step sizes must be > 0");
        }
        if (i > 0 && !(dt_list[i] < dt_list[i - 1])) {
            throw ValidationError("step sizes must be strictly decreasing");
        }
    }

    const double dt_ref = dt_list.back() / 10.0;
    const Trajectory ref = simulate(params, law, forcing, init, dt_ref, t_end, max_steps);

    std::vector<ConvergencePoint> points;
    points.reserve(dt_list.size());
    for (double dt : dt_list) {
        const Trajectory traj = simulate(params, law, forcing, init, dt, t_end, max_steps);
        double error = 0.0;
        for (std::size_t j = 0; j < traj.states.size(); ++j) {
            const auto ref_idx = static_cast<std::size_t>(
                std::llround((traj.states[j].t - init.t) / dt_ref));
            if (ref_idx >= ref.states.size()) {
                break;
            }
            error = std::max(error, std::abs(traj.states[j].x - ref.states[ref_idx].x));
        }

        ConvergencePoint point;
        point.dt = dt;
        point.error = error;
        if (!points.empty() && points.back().error > 0.0 && error > 0.0) {
            point.observed_order =
                std::log(points.back().error / error) / std::log(points.back().dt / dt);
        }
        points.push_back(point);
    }
    return points;
}

} // namespace stickslip
