#include "stickslip/root_finding.hpp"

#include <cmath>

#include "stickslip/errors.hpp"

namespace stickslip {

RootResult find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                               const RootOptions& opts) {
    if (!(lo <= hi)) {
        throw NumericalError("find_root_bracketed: lo must not exceed hi");
    }
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
        throw NumericalError("find_root_bracketed: f is not finite at a bracket endpoint");
    }
    if (f_lo == 0.0) {
        return {lo, 0.0, 0};
    }
    if (f_hi == 0.0) {
        return {hi, 0.0, 0};
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NumericalError("find_root_bracketed: f(lo) and f(hi) have the same sign");
    }

    double x = 0.5 * (lo + hi);
    double f_x = f(x);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        if (!std::isfinite(f_x)) {
            throw NumericalError("find_root_bracketed: f is not finite inside the bracket");
        }
        if (f_x == 0.0) {
            return {x, 0.0, iter};
        }
        // Shrink the bracket around the sign change.
        if ((f_x > 0.0) == (f_hi > 0.0)) {
            hi = x;
            f_hi = f_x;
        } else {
            lo = x;
            f_lo = f_x;
        }

        const double width = hi - lo;
        const bool width_ok = width <= opts.x_tol_rel * std::max(1.0, std::abs(x));
        const bool degenerate = std::nextafter(lo, hi) >= hi;
        if ((width_ok && std::abs(f_x) <= opts.f_tol) || degenerate) {
            // Adjacent endpoints mean the root is resolved to one ulp.
            return {x, f_x, iter};
        }

        // Newton step from a central-difference slope, kept only when it stays
        // strictly inside the bracket; otherwise bisect.
        double x_next = 0.5 * (lo + hi);
        const double h = std::max(1e-7 * std::abs(x), 0.25 * width * 1e-7);
        if (h > 0.0 && x - h >= lo && x + h <= hi) {
            const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
            if (std::isfinite(slope) && slope != 0.0) {
                const double candidate = x - f_x / slope;
                if (candidate > lo && candidate < hi) {
                    x_next = candidate;
                }
            }
        }
        x = x_next;
        f_x = f(x);
    }
    throw NumericalError("find_root_bracketed: no convergence within the iteration limit");
}

} // namespace stickslip
