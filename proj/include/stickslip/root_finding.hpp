#pragma once

#include <functional>

#include "stickslip/errors.hpp"

namespace stickslip {

struct RootOptions {
    /// Convergence on the residual magnitude.
    double f_tol = 1e-12;
    /// Convergence on the bracket width, relative to max(1, |x|).
    double x_tol_rel = 1e-15;
    int max_iter = 200;
};

struct RootResult {
    double x;
    double f_x;
    int iterations;
};

/// Finds the root of a continuous function on [lo, hi] by Newton steps
/// (slope from a central difference) safeguarded by bisection: a Newton
/// candidate is accepted only if it stays inside the current bracket and
/// reduces |f|, otherwise the interval is bisected. Convergence requires
/// both |f| <= f_tol and bracket width <= x_tol_rel * max(1, |x|).
///
/// Throws NumericalError if f(lo) and f(hi) do not straddle zero or the
/// iteration cap is reached.
[[nodiscard]] RootResult find_root_bracketed(const std::function<double(double)>& f,
                                             double lo,
                                             double hi,
                                             const RootOptions& opts = {});

} // namespace stickslip
