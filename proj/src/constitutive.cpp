#include "stickslip/constitutive.hpp"

#include <cmath>
#include <sstream>

#include "stickslip/root_finding.hpp"

namespace stickslip {

SystemParams::SystemParams(double mass, double stiffness) : m(mass), k(stiffness) {
    if (!(std::isfinite(m) && m > 0.0)) {
        throw ValidationError("m must be > 0");
    }
    if (!(std::isfinite(k) && k > 0.0)) {
        throw ValidationError("k must be > 0");
    }
}

std::string ValidationReport::joined() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < findings.size(); ++i) {
        if (i > 0) {
            os << "; ";
        }
        os << findings[i];
    }
    return os.str();
}

double bingham_velocity(const BinghamLaw& law, double F_d) noexcept {
    if (std::abs(F_d) <= law.threshold) {
        return 0.0;
    }
    return law.gamma * (F_d - sign(F_d) * law.threshold);
}

double bingham_force_from_velocity(const BinghamLaw& law, double v) {
    if (v == 0.0) {
        throw SetValuedError(
            "force-from-velocity is set-valued at v = 0: any |F_d| <= threshold "
            "satisfies the law; the caller must choose");
    }
    return v / law.gamma + sign(v) * law.threshold;
}

double velocity_from_force(const DashpotLaw& law, double F_d) {
    return std::visit(
        [F_d](const auto& l) -> double {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, BinghamLaw>) {
                return bingham_velocity(l, F_d);
            } else if constexpr (std::is_same_v<L, LinearViscousLaw>) {
                return F_d / l.c;
            } else {
                return l.g(F_d);
            }
        },
        law);
}

double force_from_velocity(const DashpotLaw& law, double v) {
    if (v == 0.0) {
        throw SetValuedError("force-from-velocity is set-valued at v = 0");
    }
    if (const auto* b = std::get_if<BinghamLaw>(&law)) {
        return bingham_force_from_velocity(*b, v);
    }
    if (const auto* lin = std::get_if<LinearViscousLaw>(&law)) {
        return lin->c * v;
    }
    const auto& g = std::get<GenericMonotoneLaw>(law).g;
    // Monotone g: expand a one-sided bracket from 0 until g crosses v.
    double hi = std::copysign(std::max(1.0, std::abs(v)), v);
    int doublings = 0;
    while ((v > 0.0) ? (g(hi) < v) : (g(hi) > v)) {
        hi *= 2.0;
        if (++doublings > 200) {
            throw NumericalError("force_from_velocity: g never reaches the requested velocity");
        }
    }
    const double lo = std::min(0.0, hi);
    const double up = std::max(0.0, hi);
    RootOptions opts;
    opts.f_tol = 1e-13 * std::max(1.0, std::abs(v));
    const auto root =
        find_root_bracketed([&g, v](double F) { return g(F) - v; }, lo, up, opts);
    return root.x;
}

double dashpot_residual(const DashpotLaw& law, double v, double F_d) {
    return v - velocity_from_force(law, F_d);
}

double spring_displacement(const SystemParams& params, double F_s) noexcept {
    return F_s / params.k;
}

namespace {

void check_bingham(const BinghamLaw& law, ValidationReport& report) {
    if (!(std::isfinite(law.gamma) && law.gamma > 0.0)) {
        report.findings.push_back("gamma must be > 0");
    }
    if (!(std::isfinite(law.threshold) && law.threshold >= 0.0)) {
        report.findings.push_back("threshold must be >= 0");
    }
}

void check_linear(const LinearViscousLaw& law, ValidationReport& report) {
    if (!(std::isfinite(law.c) && law.c > 0.0)) {
        report.findings.push_back("c must be > 0");
    }
}

void check_generic(const GenericMonotoneLaw& law, ValidationReport& report) {
    if (!law.g) {
        report.findings.push_back("g must be callable");
        return;
    }
    if (!(std::isfinite(law.validation_halfwidth) && law.validation_halfwidth > 0.0)) {
        report.findings.push_back("validation_halfwidth must be > 0");
        return;
    }
    if (!(std::isfinite(law.velocity_scale) && law.velocity_scale > 0.0)) {
        report.findings.push_back("velocity_scale must be > 0");
    }

    // 257-point grid; index 128 lands on F = 0 exactly.
    constexpr int n = 257;
    double samples[n];
    bool finite = true;
    for (int i = 0; i < n; ++i) {
        const double F = static_cast<double>(i - 128) * law.validation_halfwidth / 128.0;
        samples[i] = law.g(F);
        if (!std::isfinite(samples[i])) {
            std::ostringstream os;
            os << "g is not finite at F = " << F;
            report.findings.push_back(os.str());
            finite = false;
            break;
        }
    }
    if (!finite) {
        return;
    }

    if (std::abs(samples[128]) > 1e-15 * law.velocity_scale) {
        report.findings.push_back("g(0) must be 0");
    }
    for (int i = 1; i < n; ++i) {
        if (samples[i] < samples[i - 1]) {
            std::ostringstream os;
            os << "g is not nondecreasing near F = "
               << static_cast<double>(i - 128) * law.validation_halfwidth / 128.0;
            report.findings.push_back(os.str());
            break;
        }
    }
    for (int i = 0; i < n; ++i) {
        const double F = static_cast<double>(i - 128) * law.validation_halfwidth / 128.0;
        if (F * samples[i] < 0.0) {
            std::ostringstream os;
            os << "F * g(F) must be >= 0; violated at F = " << F;
            report.findings.push_back(os.str());
            break;
        }
    }
}

} // namespace

ValidationReport law_wellformed(const DashpotLaw& law) {
    ValidationReport report;
    std::visit(
        [&report](const auto& l) {
            using L = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<L, BinghamLaw>) {
                check_bingham(l, report);
            } else if constexpr (std::is_same_v<L, LinearViscousLaw>) {
                check_linear(l, report);
            } else {
                check_generic(l, report);
            }
        },
        law);
    return report;
}

void ensure_wellformed(const DashpotLaw& law) {
    const auto report = law_wellformed(law);
    if (!report.ok()) {
        throw ValidationError("dashpot law is not well formed: " + report.joined());
    }
}

double velocity_scale(const DashpotLaw& law) noexcept {
    if (const auto* b = std::get_if<BinghamLaw>(&law)) {
        return b->gamma * b->threshold;
    }
    if (const auto* g = std::get_if<GenericMonotoneLaw>(&law)) {
        return g->velocity_scale;
    }
    return 1.0;
}

} // namespace stickslip
