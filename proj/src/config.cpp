#include "stickslip/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "stickslip/system.hpp"

namespace stickslip {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "scenario",       "reference_defaults",
        "m",              "k",
        "law",            "gamma",
        "threshold",      "c",
        "forcing.type",   "forcing.value",
        "forcing.amplitude", "forcing.omega",
        "forcing.frequency", "forcing.t_end",
        "x0",             "v0",
        "fd0",            "dt",
        "t_end",          "max_steps",
        "output.trajectory", "output.summary",
        "output.plots_dir",
    };
    return keys;
}

std::string trim(const std::string& text) {
    const std::size_t begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const std::size_t end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

struct Entry {
    std::string value;
    std::size_t line = 0;
};

using EntryMap = std::map<std::string, Entry>;

EntryMap collect_entries(const std::string& text,
                         const std::map<std::string, std::string>& overrides) {
    EntryMap entries;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no += 1;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "line " << line_no << ": expected 'key = value'";
            throw ParseError(os.str());
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream os;
            os << "line " << line_no << ": empty key";
            throw ParseError(os.str());
        }
        if (known_keys().count(key) == 0) {
            std::ostringstream os;
            os << "line " << line_no << ": unknown key '" << key << "'";
            throw ParseError(os.str());
        }
        if (entries.count(key) != 0) {
            std::ostringstream os;
            os << "line " << line_no << ": duplicate key '" << key << "' (first on line "
               << entries[key].line << ")";
            throw ParseError(os.str());
        }
        entries[key] = {value, line_no};
    }
    for (const auto& [key, value] : overrides) {
        if (known_keys().count(key) == 0) {
            throw ParseError("unknown key '" + key + "' in override");
        }
        entries[key] = {value, 0};
    }
    return entries;
}

double to_double(const std::string& key, const Entry& entry) {
    const char* begin = entry.value.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(value)) {
        throw ParseError("value of '" + key + "' is not a finite number: '" + entry.value +
                         "'");
    }
    return value;
}

bool to_bool(const std::string& key, const Entry& entry) {
    if (entry.value == "true" || entry.value == "1" || entry.value == "yes") {
        return true;
    }
    if (entry.value == "false" || entry.value == "0" || entry.value == "no") {
        return false;
    }
    throw ParseError("value of '" + key + "' is not a boolean: '" + entry.value + "'");
}

class Resolver {
public:
    explicit Resolver(EntryMap entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<std::string> take_string(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        std::string value = it->second.value;
        entries_.erase(it);
        return value;
    }

    std::optional<double> take_double(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        const double value = to_double(key, it->second);
        entries_.erase(it);
        return value;
    }

    std::optional<bool> take_bool(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        const bool value = to_bool(key, it->second);
        entries_.erase(it);
        return value;
    }

    double require_double(const std::string& key) {
        auto value = take_double(key);
        if (!value) {
            throw ValidationError("missing required key '" + key + "'");
        }
        return *value;
    }

    void reject_leftovers() const {
        for (const auto& [key, entry] : entries_) {
            (void)entry;
            throw ValidationError("key '" + key + "' does not apply to this configuration");
        }
    }

private:
    EntryMap entries_;
};

struct CaseDefaults {
    double x0 = 0.0;
    std::optional<double> sinusoid_amplitude;
};

CaseDefaults defaults_for(ScenarioId id) {
    CaseDefaults d;
    switch (id) {
    case ScenarioId::F1Forced:
        d.sinusoid_amplitude = 0.5;
        break;
    case ScenarioId::F2Forced:
        d.sinusoid_amplitude = 10.0;
        break;
    case ScenarioId::SmallDisplacement:
        d.x0 = 0.005;
        break;
    case ScenarioId::LargeDisplacement:
        d.x0 = 0.5;
        break;
    }
    return d;
}

DashpotLaw resolve_law(Resolver& r, bool have_defaults) {
    std::string type = "bingham";
    if (auto given = r.take_string("law")) {
        type = *given;
    }

    if (type == "bingham") {
        if (r.has("c")) {
            throw ValidationError("c applies only to law = linear");
        }
        std::optional<double> gamma = r.take_double("gamma");
        std::optional<double> threshold = r.take_double("threshold");
        if (have_defaults) {
            gamma = gamma.value_or(1.0);
            threshold = threshold.value_or(1.0);
        }
        if (!gamma) {
            throw ValidationError("missing required key 'gamma'");
        }
        if (!threshold) {
            throw ValidationError("missing required key 'threshold'");
        }
        return BinghamLaw{*gamma, *threshold};
    }
    if (type == "linear") {
        if (r.has("gamma") || r.has("threshold")) {
            throw ValidationError("gamma and threshold apply only to law = bingham");
        }
        auto c = r.take_double("c");
        if (!c) {
            throw ValidationError("missing required key 'c'");
        }
        return LinearViscousLaw{*c};
    }
    throw ValidationError("unknown law '" + type + "'");
}

Forcing resolve_forcing(Resolver& r, const std::optional<double>& scenario_amplitude) {
    std::string type = scenario_amplitude ? "sinusoid" : "zero";
    if (auto given = r.take_string("forcing.type")) {
        type = *given;
    }

    if (type == "zero") {
        for (const char* key :
             {"forcing.value", "forcing.amplitude", "forcing.omega", "forcing.frequency",
              "forcing.t_end"}) {
            if (r.has(key)) {
                throw ValidationError(std::string(key) +
                                      " does not apply to forcing.type = zero");
            }
        }
        return ZeroForcing{};
    }
    if (type == "constant") {
        for (const char* key : {"forcing.amplitude", "forcing.omega", "forcing.frequency",
                                "forcing.t_end"}) {
            if (r.has(key)) {
                throw ValidationError(std::string(key) +
                                      " does not apply to forcing.type = constant");
            }
        }
        auto value = r.take_double("forcing.value");
        if (!value) {
            throw ValidationError("missing required key 'forcing.value'");
        }
        return ConstantForcing{*value};
    }
    if (type == "sinusoid") {
        if (r.has("forcing.value")) {
            throw ValidationError("forcing.value does not apply to forcing.type = sinusoid");
        }
        std::optional<double> amplitude = r.take_double("forcing.amplitude");
        if (!amplitude) {
            amplitude = scenario_amplitude;
        }
        if (!amplitude) {
            throw ValidationError("missing required key 'forcing.amplitude'");
        }

        const std::optional<double> omega = r.take_double("forcing.omega");
        const std::optional<double> frequency = r.take_double("forcing.frequency");
        if (omega && frequency) {
            throw ValidationError("give forcing.omega or forcing.frequency, not both");
        }
        double resolved_omega = 5.0 * std::numbers::pi;
        if (omega) {
            resolved_omega = *omega;
        } else if (frequency) {
            resolved_omega = 2.0 * std::numbers::pi * *frequency;
        } else if (!scenario_amplitude) {
            throw ValidationError(
                "missing required key 'forcing.omega' (or forcing.frequency)");
        }

        double window_end = std::numeric_limits<double>::infinity();
        if (scenario_amplitude) {
            window_end = 1.0;
        }
        if (auto given = r.take_double("forcing.t_end")) {
            window_end = *given;
        }
        return WindowedSinusoid{*amplitude, resolved_omega, window_end};
    }
    throw ValidationError("unknown forcing.type '" + type + "'");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    return parse_config(text, {});
}

RunConfig parse_config(const std::string& text,
                       const std::map<std::string, std::string>& overrides) {
    Resolver r(collect_entries(text, overrides));
    RunConfig config;

    bool have_defaults = false;
    if (auto flag = r.take_bool("reference_defaults")) {
        have_defaults = *flag;
    }
    std::optional<CaseDefaults> case_defaults;
    if (auto name = r.take_string("scenario")) {
        config.scenario = scenario_from_string(*name);
        if (!config.scenario) {
            throw ValidationError("unknown scenario '" + *name + "'");
        }
        case_defaults = defaults_for(*config.scenario);
        have_defaults = true;
    }

    double m = 0.0;
    double k = 0.0;
    if (have_defaults) {
        m = r.take_double("m").value_or(1.0);
        k = r.take_double("k").value_or(100.0);
    } else {
        m = r.require_double("m");
        k = r.require_double("k");
    }
    config.params = SystemParams(m, k);

    config.dt = r.take_double("dt").value_or(1e-4);
    config.t_end = r.take_double("t_end").value_or(2.0);
    config.x0 = r.take_double("x0").value_or(case_defaults ? case_defaults->x0 : 0.0);

    config.law = resolve_law(r, have_defaults);
    ensure_wellformed(config.law);
    config.forcing = resolve_forcing(
        r, case_defaults ? case_defaults->sinusoid_amplitude : std::nullopt);

    config.F_d0 = r.take_double("fd0");
    config.v0 = r.take_double("v0");

    if (!(config.dt > 0.0)) {
        throw ValidationError("dt must be > 0");
    }
    if (!(config.t_end >= 0.0)) {
        throw ValidationError("t_end must be >= 0");
    }
    if (auto steps = r.take_double("max_steps")) {
        if (!(*steps >= 1.0) || *steps != std::floor(*steps)) {
            throw ValidationError("max_steps must be a positive integer");
        }
        config.max_steps = static_cast<std::int64_t>(*steps);
    }

    if (auto path = r.take_string("output.trajectory")) {
        config.output.trajectory_csv = *path;
    }
    if (auto path = r.take_string("output.summary")) {
        config.output.summary = *path;
    }
    if (auto path = r.take_string("output.plots_dir")) {
        config.output.plots_dir = *path;
    }

    r.reject_leftovers();
    return config;
}

RunConfig load_config(const std::string& path) {
    return load_config(path, {});
}

RunConfig load_config(const std::string& path,
                      const std::map<std::string, std::string>& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

Trajectory run_config(const RunConfig& config) {
    const State init =
        consistent_init(config.params, config.law, config.x0, config.F_d0, config.v0);
    return simulate(config.params, config.law, config.forcing, init, config.dt, config.t_end,
                    config.max_steps);
}

} // namespace stickslip
