#include "stickslip/report.hpp"

#include <fstream>
#include <ostream>

#include "stickslip/trajectory_io.hpp"

namespace stickslip {

void write_summary(std::ostream& out, const Trajectory& traj, const TrajectorySummary& summary,
                   const ResidualReport& residuals, const InclusionReport* inclusion,
                   const EnergyAudit& energy) {
    const State& final_state = summary.final_state;
    out << "nodes = " << traj.states.size() << "\n";
    out << "dt = " << fmt17(traj.dt) << "\n";
    out << "t_first = " << fmt17(traj.states.front().t) << "\n";
    out << "t_final = " << fmt17(final_state.t) << "\n";
    out << "final.x = " << fmt17(final_state.x) << "\n";
    out << "final.v = " << fmt17(final_state.v) << "\n";
    out << "final.Fs = " << fmt17(final_state.F_s) << "\n";
    out << "final.Fd = " << fmt17(final_state.F_d) << "\n";
    out << "max_abs_x = " << fmt17(summary.max_abs_x) << "\n";
    out << "max_abs_v = " << fmt17(summary.max_abs_v) << "\n";
    out << "stick_fraction = " << fmt17(summary.stick_fraction) << "\n";
    if (summary.rest_time) {
        out << "rest_time = " << fmt17(*summary.rest_time) << "\n";
    } else {
        out << "rest_time = none\n";
    }
    out << "total_dissipation = " << fmt17(summary.total_dissipation) << "\n";
    out << "extremum.count = " << summary.extrema.size() << "\n";
    for (std::size_t i = 0; i < summary.extrema.size(); ++i) {
        out << "extremum." << i << ".t = " << fmt17(summary.extrema[i].t) << "\n";
        out << "extremum." << i << ".x = " << fmt17(summary.extrema[i].x) << "\n";
    }
    out << "residual.momentum = " << fmt17(residuals.max_momentum_residual) << "\n";
    out << "residual.spring = " << fmt17(residuals.max_spring_residual) << "\n";
    out << "residual.constitutive = " << fmt17(residuals.max_constitutive_residual) << "\n";
    out << "residual.worst_step = " << residuals.worst_step_index << "\n";
    if (inclusion != nullptr) {
        out << "inclusion.checked = yes\n";
        out << "inclusion.tol = " << fmt17(inclusion->tol) << "\n";
        out << "inclusion.steps = " << inclusion->steps_checked << "\n";
        out << "inclusion.max_distance = " << fmt17(inclusion->max_distance) << "\n";
        out << "inclusion.violations = " << inclusion->violations.size() << "\n";
    } else {
        out << "inclusion.checked = no\n";
    }
    out << "energy.work_in = " << fmt17(energy.work_in) << "\n";
    out << "energy.spring_delta = " << fmt17(energy.spring_delta) << "\n";
    out << "energy.kinetic_delta = " << fmt17(energy.kinetic_delta) << "\n";
    out << "energy.dissipated = " << fmt17(energy.dissipated) << "\n";
    out << "energy.closure_error = " << fmt17(energy.closure_error) << "\n";
    if (!out) {
        throw Error("failed while writing summary report");
    }
}

void write_summary(const std::string& path, const Trajectory& traj,
                   const TrajectorySummary& summary, const ResidualReport& residuals,
                   const InclusionReport* inclusion, const EnergyAudit& energy) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    write_summary(out, traj, summary, residuals, inclusion, energy);
}

} // namespace stickslip
