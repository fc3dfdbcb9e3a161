#include "stickslip/trajectory_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace stickslip {

namespace {

constexpr const char* kHeader = "t,x,v,Fs,Fd,F,mode";

double parse_double(const std::string& text, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        std::ostringstream os;
        os << "line " << line_no << ": '" << text << "' is not a number";
        throw ParseError(os.str());
    }
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    std::size_t end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

} // namespace

std::string fmt17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "# stickslip trajectory\n";
    out << "# m = " << fmt17(traj.params.m) << "\n";
    out << "# k = " << fmt17(traj.params.k) << "\n";
    if (const auto* bingham = std::get_if<BinghamLaw>(&traj.law)) {
        out << "# law.type = bingham\n";
        out << "# law.gamma = " << fmt17(bingham->gamma) << "\n";
        out << "# law.threshold = " << fmt17(bingham->threshold) << "\n";
    } else if (const auto* linear = std::get_if<LinearViscousLaw>(&traj.law)) {
        out << "# law.type = linear\n";
        out << "# law.c = " << fmt17(linear->c) << "\n";
    } else {
        out << "# law.type = generic\n";
    }
    out << "# dt = " << fmt17(traj.dt) << "\n";
    out << kHeader << "\n";

    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const State& s = traj.states[n];
        const double F = eval(traj.forcing, s.t);
        const std::string mode = n == 0 ? "init" : to_string(traj.modes[n - 1]);
        out << fmt17(s.t) << ',' << fmt17(s.x) << ',' << fmt17(s.v) << ',' << fmt17(s.F_s)
            << ',' << fmt17(s.F_d) << ',' << fmt17(F) << ',' << mode << "\n";
    }
    if (!out) {
        throw Error("failed while writing trajectory CSV");
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    write_trajectory_csv(traj, out);
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::map<std::string, std::string> meta;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        line_no += 1;
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        if (stripped[0] == '#') {
            const std::size_t eq = stripped.find('=');
            if (eq != std::string::npos) {
                const std::string key = trim(stripped.substr(1, eq - 1));
                const std::string value = trim(stripped.substr(eq + 1));
                if (!key.empty()) {
                    meta[key] = value;
                }
            }
            continue;
        }
        if (stripped != kHeader) {
            std::ostringstream os;
            os << "line " << line_no << ": expected header '" << kHeader << "'";
            throw ParseError(os.str());
        }
        have_header = true;
        break;
    }
    if (!have_header) {
        throw ParseError("missing CSV header");
    }

    const auto require = [&meta](const char* key) -> const std::string& {
        const auto it = meta.find(key);
        if (it == meta.end()) {
            throw ParseError(std::string("missing '# ") + key + " = ...' metadata line");
        }
        return it->second;
    };

    const std::string& law_type = require("law.type");
    DashpotLaw law = BinghamLaw{};
    if (law_type == "bingham") {
        law = BinghamLaw{parse_double(require("law.gamma"), 0),
                         parse_double(require("law.threshold"), 0)};
    } else if (law_type == "linear") {
        law = LinearViscousLaw{parse_double(require("law.c"), 0)};
    } else if (law_type == "generic") {
        throw ParseError("generic laws cannot be reconstructed from a file");
    } else {
        throw ParseError("unknown law.type '" + law_type + "'");
    }

    const SystemParams params(parse_double(require("m"), 0), parse_double(require("k"), 0));
    const double dt = parse_double(require("dt"), 0);
    if (!(dt > 0.0)) {
        throw ParseError("dt metadata must be > 0");
    }

    std::vector<State> states;
    std::vector<StepMode> modes;
    std::vector<std::pair<double, double>> force_samples;

    while (std::getline(in, line)) {
        line_no += 1;
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto fields = split_fields(stripped);
        if (fields.size() != 7) {
            std::ostringstream os;
            os << "line " << line_no << ": expected 7 fields, got " << fields.size();
            throw ParseError(os.str());
        }

        State s;
        s.t = parse_double(fields[0], line_no);
        s.x = parse_double(fields[1], line_no);
        s.v = parse_double(fields[2], line_no);
        s.F_s = parse_double(fields[3], line_no);
        s.F_d = parse_double(fields[4], line_no);
        const double F = parse_double(fields[5], line_no);
        const std::string& mode = fields[6];

        if (!states.empty() && !(states.back().t < s.t)) {
            std::ostringstream os;
            os << "line " << line_no << ": t must be strictly increasing";
            throw ParseError(os.str());
        }
        if (states.empty()) {
            if (mode != "init") {
                std::ostringstream os;
                os << "line " << line_no << ": first row must have mode 'init'";
                throw ParseError(os.str());
            }
        } else if (mode == "stick") {
            modes.push_back(StepMode::Stick);
        } else if (mode == "slip") {
            modes.push_back(StepMode::Slip);
        } else {
            std::ostringstream os;
            os << "line " << line_no << ": unknown mode '" << mode << "'";
            throw ParseError(os.str());
        }
        states.push_back(s);
        force_samples.emplace_back(s.t, F);
    }
    if (states.empty()) {
        throw ParseError("trajectory has no rows");
    }

    Forcing forcing = ConstantForcing{force_samples.front().second};
    if (force_samples.size() >= 2) {
        forcing = TabulatedForcing(std::move(force_samples));
    }

    Trajectory traj{params, law, forcing, dt, std::move(states), std::move(modes)};
    return traj;
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    return read_trajectory_csv(in);
}

} // namespace stickslip
