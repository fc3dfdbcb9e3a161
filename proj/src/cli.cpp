#include "stickslip/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stickslip/config.hpp"
#include "stickslip/filippov.hpp"
#include "stickslip/report.hpp"
#include "stickslip/scenarios.hpp"
#include "stickslip/svg.hpp"
#include "stickslip/trajectory_io.hpp"

namespace stickslip {

namespace {

namespace fs = std::filesystem;

fs::path out_base(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("STICKSLIP_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

/// Relative paths land under the output base; parents are created.
std::string resolve_out(const fs::path& base, const std::string& path) {
    fs::path p(path);
    if (!p.is_absolute()) {
        p = base / p;
    }
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    return p.string();
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& sets) {
    std::map<std::string, std::string> overrides;
    for (const std::string& item : sets) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("--set expects key=value, got '" + item + "'");
        }
        overrides[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return overrides;
}

std::vector<double> parse_dt_list(const std::string& text) {
    std::vector<double> dts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const char* begin = item.c_str();
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin || *end != '\0') {
            throw ParseError("'" + item + "' is not a number in the dt list");
        }
        dts.push_back(value);
    }
    if (dts.empty()) {
        throw ParseError("empty dt list");
    }
    return dts;
}

struct CanonicalSetup {
    SystemParams params{1.0, 100.0};
    BinghamLaw law{1.0, 1.0};
    Forcing forcing = ZeroForcing{};
    double x0 = 0.0;
};

CanonicalSetup canonical_setup(const std::string& name) {
    const auto id = scenario_from_string(name);
    if (!id) {
        throw ValidationError("unknown scenario '" + name + "'");
    }
    CanonicalSetup setup;
    switch (*id) {
    case ScenarioId::F1Forced:
        setup.forcing = WindowedSinusoid{0.5, 5.0 * std::numbers::pi, 1.0};
        break;
    case ScenarioId::F2Forced:
        setup.forcing = WindowedSinusoid{10.0, 5.0 * std::numbers::pi, 1.0};
        break;
    case ScenarioId::SmallDisplacement:
        setup.x0 = 0.005;
        break;
    case ScenarioId::LargeDisplacement:
        setup.x0 = 0.5;
        break;
    }
    return setup;
}

/// Writes CSV, summary and optional plots, prints a digest, and gates on the
/// trajectory's own verification.  Returns 0 or 4.
int emit_run_outputs(const Trajectory& traj, const fs::path& base,
                     const std::string& csv_path, const std::string& summary_path,
                     const std::string& plots_dir, double residual_tol) {
    const TrajectorySummary summary = summarize(traj);
    const ResidualReport residuals = residual_check(traj);
    const EnergyAudit energy = energy_audit(traj);
    std::optional<InclusionReport> inclusion;
    if (std::holds_alternative<BinghamLaw>(traj.law)) {
        inclusion = check_inclusion(traj, default_inclusion_tol(traj));
    }

    const std::string csv_out = resolve_out(base, csv_path);
    write_trajectory_csv(traj, csv_out);
    const std::string summary_out = resolve_out(base, summary_path);
    write_summary(summary_out, traj, summary, residuals,
                  inclusion ? &*inclusion : nullptr, energy);
    if (!plots_dir.empty()) {
        write_trajectory_plots(traj, resolve_out(base, plots_dir));
    }

    std::cout << "trajectory = " << csv_out << "\n";
    std::cout << "summary = " << summary_out << "\n";
    std::cout << "nodes = " << traj.states.size() << "\n";
    std::cout << "final.x = " << fmt17(summary.final_state.x) << "\n";
    std::cout << "final.v = " << fmt17(summary.final_state.v) << "\n";
    std::cout << "stick_fraction = " << fmt17(summary.stick_fraction) << "\n";
    std::cout << "residual.max = " << fmt17(residuals.max_residual()) << "\n";
    if (inclusion) {
        std::cout << "inclusion.violations = " << inclusion->violations.size() << "\n";
    } else {
        std::cout << "inclusion.violations = skipped (law has no inclusion form)\n";
    }

    if (residuals.max_residual() > residual_tol) {
        std::cerr << "error: verification: max residual " << fmt17(residuals.max_residual())
                  << " exceeds " << fmt17(residual_tol) << " at step "
                  << residuals.worst_step_index << "\n";
        return 4;
    }
    if (inclusion && !inclusion->ok()) {
        std::cerr << "error: verification: " << inclusion->violations.size()
                  << " inclusion violation(s), first at step "
                  << inclusion->violations.front().step << "\n";
        return 4;
    }
    return 0;
}

struct RunOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    bool plots = false;
    double residual_tol = 1e-8;
};

int cmd_run(const RunOpts& o) {
    RunConfig cfg = load_config(o.config_path, parse_overrides(o.sets));
    if (o.plots && cfg.output.plots_dir.empty()) {
        cfg.output.plots_dir = "plots";
    }
    const Trajectory traj = run_config(cfg);
    return emit_run_outputs(traj, out_base(o.out_dir), cfg.output.trajectory_csv,
                            cfg.output.summary, cfg.output.plots_dir, o.residual_tol);
}

struct ReferenceOpts {
    std::string which = "all";
    double t_end = 2.0;
    std::string out_dir;
    bool plots = false;
    double residual_tol = 1e-8;
};

int cmd_reference(const ReferenceOpts& o) {
    std::vector<ScenarioId> ids;
    if (o.which == "all") {
        ids = {ScenarioId::F1Forced, ScenarioId::F2Forced, ScenarioId::SmallDisplacement,
               ScenarioId::LargeDisplacement};
    } else {
        const auto id = scenario_from_string(o.which);
        if (!id) {
            throw ValidationError("unknown case '" + o.which +
                                  "' (expected f1, f2, small, large or all)");
        }
        ids = {*id};
    }

    int worst = 0;
    const fs::path base = out_base(o.out_dir);
    for (ScenarioId id : ids) {
        const std::string name = to_string(id);
        std::cout << "case = " << name << "\n";
        const ScenarioRun run = run_canonical_case(id, o.t_end);
        const int rc = emit_run_outputs(run.trajectory, base, name + "_trajectory.csv",
                                        name + "_summary.txt",
                                        o.plots ? name + "_plots" : "", o.residual_tol);
        worst = std::max(worst, rc);
    }
    return worst;
}

struct VerifyOpts {
    std::string file;
    double residual_tol = 1e-8;
    double inclusion_tol = 0.0;
};

int cmd_verify(const VerifyOpts& o) {
    const Trajectory traj = read_trajectory_csv(o.file);
    std::vector<std::string> findings;
    const auto note = [&findings](std::string text) { findings.push_back(std::move(text)); };

    const double t0 = traj.states.front().t;
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const double expected = t0 + static_cast<double>(n) * traj.dt;
        if (std::abs(traj.states[n].t - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
            std::ostringstream os;
            os << "node " << n << ": t = " << fmt17(traj.states[n].t)
               << " is off the uniform grid (expected " << fmt17(expected) << ")";
            note(os.str());
            break;
        }
    }

    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const auto report = check_state(traj.params, traj.law, traj.states[n]);
        if (!report.ok()) {
            std::ostringstream os;
            os << "node " << n << ": " << report.joined();
            note(os.str());
            break;
        }
    }

    const ResidualReport residuals = residual_check(traj);
    if (residuals.max_residual() > o.residual_tol) {
        std::ostringstream os;
        os << "max residual " << fmt17(residuals.max_residual()) << " exceeds "
           << fmt17(o.residual_tol) << " at step " << residuals.worst_step_index;
        note(os.str());
    }

    bool inclusion_checked = false;
    std::size_t inclusion_violations = 0;
    if (std::holds_alternative<BinghamLaw>(traj.law)) {
        inclusion_checked = true;
        const double tol =
            o.inclusion_tol > 0.0 ? o.inclusion_tol : default_inclusion_tol(traj);
        const InclusionReport inclusion = check_inclusion(traj, tol);
        inclusion_violations = inclusion.violations.size();
        if (!inclusion.ok()) {
            std::ostringstream os;
            os << inclusion.violations.size() << " inclusion violation(s) at tol "
               << fmt17(tol) << ", first at step " << inclusion.violations.front().step
               << " (distance " << fmt17(inclusion.violations.front().distance) << ")";
            note(os.str());
        }
    }

    if (!findings.empty()) {
        std::cerr << "error: verification: " << findings.front();
        if (findings.size() > 1) {
            std::cerr << " (+" << findings.size() - 1 << " more)";
        }
        std::cerr << "\n";
        for (const std::string& finding : findings) {
            std::cerr << "  - " << finding << "\n";
        }
        return 4;
    }

    std::cout << "verified = " << o.file << "\n";
    std::cout << "nodes = " << traj.states.size() << "\n";
    std::cout << "residual.max = " << fmt17(residuals.max_residual()) << "\n";
    if (inclusion_checked) {
        std::cout << "inclusion.violations = " << inclusion_violations << "\n";
    } else {
        std::cout << "inclusion.violations = skipped (law has no inclusion form)\n";
    }
    return 0;
}

struct ConvergeOpts {
    std::string scenario = "f2";
    double t_end = 0.5;
    std::string dts = "4e-4,2e-4,1e-4";
    std::string out;
    std::string out_dir;
};

int cmd_converge(const ConvergeOpts& o) {
    const CanonicalSetup setup = canonical_setup(o.scenario);
    const State init = consistent_init(setup.params, DashpotLaw{setup.law}, setup.x0);
    const auto points =
        convergence_study(setup.params, DashpotLaw{setup.law}, setup.forcing, init, o.t_end,
                          parse_dt_list(o.dts));

    std::ostringstream table;
    table << "dt,error,order\n";
    for (const auto& point : points) {
        std::cout << "dt = " << fmt17(point.dt) << "  error = " << fmt17(point.error)
                  << "  order = "
                  << (point.observed_order ? fmt17(*point.observed_order) : "-") << "\n";
        table << fmt17(point.dt) << ',' << fmt17(point.error) << ','
              << (point.observed_order ? fmt17(*point.observed_order) : "") << "\n";
    }
    if (!o.out.empty()) {
        const std::string path = resolve_out(out_base(o.out_dir), o.out);
        std::ofstream file(path);
        if (!file) {
            throw Error("cannot open '" + path + "' for writing");
        }
        file << table.str();
        std::cout << "table = " << path << "\n";
    }
    return 0;
}

struct CompareOpts {
    std::string scenario = "small";
    double t_end = 2.0;
    double dt = 1e-4;
    bool pure_coulomb = false;
    std::string out_dir;
};

int cmd_compare_naive(const CompareOpts& o) {
    const CanonicalSetup setup = canonical_setup(o.scenario);
    const State init = consistent_init(setup.params, DashpotLaw{setup.law}, setup.x0);
    const Trajectory dae =
        simulate(setup.params, DashpotLaw{setup.law}, setup.forcing, init, o.dt, o.t_end);
    const Trajectory naive =
        naive_signum_simulate(setup.params, setup.law, setup.forcing, setup.x0, 0.0, o.dt,
                              o.t_end, !o.pure_coulomb);

    const fs::path base = out_base(o.out_dir);
    write_trajectory_csv(dae, resolve_out(base, "dae_trajectory.csv"));
    write_trajectory_csv(naive, resolve_out(base, "naive_trajectory.csv"));

    const auto zero_fraction = [](const Trajectory& traj) {
        std::size_t zeros = 0;
        for (const State& s : traj.states) {
            if (s.v == 0.0) {
                zeros += 1;
            }
        }
        return static_cast<double>(zeros) / static_cast<double>(traj.states.size());
    };
    const TrajectorySummary dae_summary = summarize(dae);
    const TrajectorySummary naive_summary = summarize(naive);
    double max_dx = 0.0;
    double max_dv = 0.0;
    for (std::size_t n = 0; n < dae.states.size() && n < naive.states.size(); ++n) {
        max_dx = std::max(max_dx, std::abs(dae.states[n].x - naive.states[n].x));
        max_dv = std::max(max_dv, std::abs(dae.states[n].v - naive.states[n].v));
    }

    std::ostringstream report;
    report << "nodes = " << dae.states.size() << "\n";
    report << "dae.zero_velocity_fraction = " << fmt17(zero_fraction(dae)) << "\n";
    report << "naive.zero_velocity_fraction = " << fmt17(zero_fraction(naive)) << "\n";
    report << "dae.stick_fraction = " << fmt17(dae_summary.stick_fraction) << "\n";
    report << "naive.stick_fraction = " << fmt17(naive_summary.stick_fraction) << "\n";
    report << "dae.max_abs_x = " << fmt17(dae_summary.max_abs_x) << "\n";
    report << "naive.max_abs_x = " << fmt17(naive_summary.max_abs_x) << "\n";
    report << "max_abs_dx = " << fmt17(max_dx) << "\n";
    report << "max_abs_dv = " << fmt17(max_dv) << "\n";

    const std::string report_path = resolve_out(base, "divergence.txt");
    {
        std::ofstream file(report_path);
        if (!file) {
            throw Error("cannot open '" + report_path + "' for writing");
        }
        file << report.str();
    }
    std::cout << report.str();
    std::cout << "report = " << report_path << "\n";
    return 0;
}

struct SweepOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
};

std::string slug_of(const std::vector<std::pair<std::string, std::string>>& combo) {
    std::string slug;
    for (const auto& [key, value] : combo) {
        if (!slug.empty()) {
            slug += '_';
        }
        slug += key + '-' + value;
    }
    for (char& ch : slug) {
        const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                          (ch >= '0' && ch <= '9') || ch == '.' || ch == '-' || ch == '_' ||
                          ch == '+';
        if (!keep) {
            ch = '_';
        }
    }
    return slug;
}

int cmd_sweep(const SweepOpts& o) {
    std::vector<std::pair<std::string, std::vector<std::string>>> grid;
    for (const std::string& item : o.sets) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("--set expects key=v1,v2,..., got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        for (const auto& dim : grid) {
            if (dim.first == key) {
                throw ParseError("duplicate sweep key '" + key + "'");
            }
        }
        std::vector<std::string> values;
        std::stringstream ss(item.substr(eq + 1));
        std::string value;
        while (std::getline(ss, value, ',')) {
            values.push_back(value);
        }
        if (values.empty()) {
            throw ParseError("sweep key '" + key + "' has no values");
        }
        grid.emplace_back(key, values);
    }
    if (grid.empty()) {
        throw ValidationError("sweep needs at least one --set key=v1,v2,...");
    }

    const fs::path base = out_base(o.out_dir);
    const fs::path sweep_dir = base / "sweep";
    fs::create_directories(sweep_dir);

    std::ostringstream index;
    for (const auto& dim : grid) {
        index << dim.first << ',';
    }
    index << "dir,nodes,final_x,final_v,max_abs_x,stick_fraction,total_dissipation,verified\n";

    std::vector<std::size_t> cursor(grid.size(), 0);
    std::size_t points = 0;
    bool all_verified = true;
    while (true) {
        std::vector<std::pair<std::string, std::string>> combo;
        std::map<std::string, std::string> overrides;
        for (std::size_t d = 0; d < grid.size(); ++d) {
            combo.emplace_back(grid[d].first, grid[d].second[cursor[d]]);
            overrides[grid[d].first] = grid[d].second[cursor[d]];
        }

        const RunConfig cfg = load_config(o.config_path, overrides);
        const Trajectory traj = run_config(cfg);
        const TrajectorySummary summary = summarize(traj);
        const ResidualReport residuals = residual_check(traj);
        bool verified = residuals.max_residual() <= 1e-8;
        if (std::holds_alternative<BinghamLaw>(traj.law)) {
            verified =
                verified && check_inclusion(traj, default_inclusion_tol(traj)).ok();
        }
        all_verified = all_verified && verified;

        const std::string slug = slug_of(combo);
        const fs::path point_dir = sweep_dir / slug;
        fs::create_directories(point_dir);
        write_trajectory_csv(traj, (point_dir / "trajectory.csv").string());
        {
            const EnergyAudit energy = energy_audit(traj);
            std::optional<InclusionReport> inclusion;
            if (std::holds_alternative<BinghamLaw>(traj.law)) {
                inclusion = check_inclusion(traj, default_inclusion_tol(traj));
            }
            write_summary((point_dir / "summary.txt").string(), traj, summary, residuals,
                          inclusion ? &*inclusion : nullptr, energy);
        }

        for (const auto& [key, value] : combo) {
            (void)key;
            index << value << ',';
        }
        index << slug << ',' << traj.states.size() << ',' << fmt17(summary.final_state.x)
              << ',' << fmt17(summary.final_state.v) << ',' << fmt17(summary.max_abs_x)
              << ',' << fmt17(summary.stick_fraction) << ','
              << fmt17(summary.total_dissipation) << ',' << (verified ? "yes" : "no")
              << "\n";
        std::cout << "point " << slug << ": final.x = " << fmt17(summary.final_state.x)
                  << ", stick_fraction = " << fmt17(summary.stick_fraction) << "\n";
        points += 1;

        std::size_t d = 0;
        for (; d < grid.size(); ++d) {
            cursor[d] += 1;
            if (cursor[d] < grid[d].second.size()) {
                break;
            }
            cursor[d] = 0;
        }
        if (d == grid.size()) {
            break;
        }
    }

    const fs::path index_path = sweep_dir / "index.csv";
    {
        std::ofstream file(index_path);
        if (!file) {
            throw Error("cannot open '" + index_path.string() + "' for writing");
        }
        file << index.str();
    }
    std::cout << "points = " << points << "\n";
    std::cout << "index = " << index_path.string() << "\n";
    if (!all_verified) {
        std::cout << "note = some points failed verification; see index.csv\n";
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"stick-slip oscillator solver (set-valued dashpot, backward Euler)"};
    app.require_subcommand(1);

    RunOpts run_opts;
    auto* run_cmd = app.add_subcommand("run", "simulate a configuration file");
    run_cmd->add_option("--config", run_opts.config_path, "configuration file")->required();
    run_cmd->add_option("--set", run_opts.sets, "override a config key (key=value)");
    run_cmd->add_option("--out-dir", run_opts.out_dir, "output directory");
    run_cmd->add_flag("--plots", run_opts.plots, "also write SVG plots");
    run_cmd->add_option("--residual-tol", run_opts.residual_tol,
                        "verification gate on the residual maxima");

    ReferenceOpts ref_opts;
    auto* ref_cmd =
        app.add_subcommand("reference", "run the built-in reference cases");
    ref_cmd->add_option("case", ref_opts.which, "f1, f2, small, large or all");
    ref_cmd->add_option("--t-end", ref_opts.t_end, "end time");
    ref_cmd->add_option("--out-dir", ref_opts.out_dir, "output directory");
    ref_cmd->add_flag("--plots", ref_opts.plots, "also write SVG plots");
    ref_cmd->add_option("--residual-tol", ref_opts.residual_tol,
                        "verification gate on the residual maxima");

    VerifyOpts verify_opts;
    auto* verify_cmd =
        app.add_subcommand("verify", "recheck a trajectory CSV against the model equations");
    verify_cmd->add_option("file", verify_opts.file, "trajectory CSV")->required();
    verify_cmd->add_option("--residual-tol", verify_opts.residual_tol,
                           "allowed residual maximum");
    verify_cmd->add_option("--inclusion-tol", verify_opts.inclusion_tol,
                           "inclusion tolerance (default: scaled automatically)");

    ConvergeOpts conv_opts;
    auto* conv_cmd = app.add_subcommand("converge", "self-convergence study");
    conv_cmd->add_option("--scenario", conv_opts.scenario, "reference case to study");
    conv_cmd->add_option("--t-end", conv_opts.t_end, "end time");
    conv_cmd->add_option("--dts", conv_opts.dts, "comma-separated step sizes, descending");
    conv_cmd->add_option("--out", conv_opts.out, "write the table as CSV");
    conv_cmd->add_option("--out-dir", conv_opts.out_dir, "output directory");

    CompareOpts cmp_opts;
    auto* cmp_cmd = app.add_subcommand(
        "compare-naive", "run the DAE stepper against the signum-ODE integrator");
    cmp_cmd->add_option("--scenario", cmp_opts.scenario, "reference case to compare on");
    cmp_cmd->add_option("--t-end", cmp_opts.t_end, "end time");
    cmp_cmd->add_option("--dt", cmp_opts.dt, "step size");
    cmp_cmd->add_flag("--pure-coulomb", cmp_opts.pure_coulomb,
                      "drop the viscous term from the naive model");
    cmp_cmd->add_option("--out-dir", cmp_opts.out_dir, "output directory");

    SweepOpts sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a cartesian parameter grid");
    sweep_cmd->add_option("--config", sweep_opts.config_path, "base configuration file")
        ->required();
    sweep_cmd->add_option("--set", sweep_opts.sets, "sweep dimension (key=v1,v2,...)");
    sweep_cmd->add_option("--out-dir", sweep_opts.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run_opts);
        }
        if (ref_cmd->parsed()) {
            return cmd_reference(ref_opts);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(verify_opts);
        }
        if (conv_cmd->parsed()) {
            return cmd_converge(conv_opts);
        }
        if (cmp_cmd->parsed()) {
            return cmd_compare_naive(cmp_opts);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_opts);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

} // namespace stickslip
