#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "stickslip/errors.hpp"

namespace stickslip {

/// No external force.
struct ZeroForcing {};

/// Constant external force.
struct ConstantForcing {
    double value = 0.0;
};

/// amplitude * sin(omega * t) while t <= t_end, zero afterwards.
struct WindowedSinusoid {
    double amplitude = 0.0;
    double omega = 0.0;
    double t_end = 0.0;
};

/// Piecewise-linear interpolation through (t, F) samples, zero outside the
/// sampled range.  Sample times must be strictly increasing.
class TabulatedForcing {
public:
    explicit TabulatedForcing(std::vector<std::pair<double, double>> samples);

    const std::vector<std::pair<double, double>>& samples() const noexcept { return samples_; }

private:
    std::vector<std::pair<double, double>> samples_;
};

using Forcing = std::variant<ZeroForcing, ConstantForcing, WindowedSinusoid, TabulatedForcing>;

/// Force at time t.  Tabulated forcings reproduce their sample values exactly
/// at the sample times.
double eval(const Forcing& forcing, double t);

/// Largest |F| over the n-point uniform grid on [t0, t1].
double max_abs_on_grid(const Forcing& forcing, double t0, double t1, int n);

} // namespace stickslip
