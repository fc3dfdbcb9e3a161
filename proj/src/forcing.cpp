#include "stickslip/forcing.hpp"

#include <algorithm>
#include <cmath>

namespace stickslip {

TabulatedForcing::TabulatedForcing(std::vector<std::pair<double, double>> samples)
    : samples_(std::move(samples)) {
    if (samples_.size() < 2) {
        throw ValidationError("tabulated forcing needs at least two samples");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i].first) || !std::isfinite(samples_[i].second)) {
            throw ValidationError("tabulated forcing samples must be finite");
        }
        if (i > 0 && !(samples_[i - 1].first < samples_[i].first)) {
            throw ValidationError("tabulated forcing times must be strictly increasing");
        }
    }
}

namespace {

double eval_tabulated(const TabulatedForcing& forcing, double t) {
    const auto& s = forcing.samples();
    if (t < s.front().first || t > s.back().first) {
        return 0.0;
    }
    const auto it = std::lower_bound(
        s.begin(), s.end(), t,
        [](const std::pair<double, double>& sample, double value) { return sample.first < value; });
    if (it != s.end() && it->first == t) {
        return it->second;
    }
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double w = (t - left.first) / (right.first - left.first);
    return left.second + w * (right.second - left.second);
}

} // namespace

double eval(const Forcing& forcing, double t) {
    return std::visit(
        [t](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ZeroForcing>) {
                return 0.0;
            } else if constexpr (std::is_same_v<F, ConstantForcing>) {
                return f.value;
            } else if constexpr (std::is_same_v<F, WindowedSinusoid>) {
                return t <= f.t_end ? f.amplitude * std::sin(f.omega * t) : 0.0;
            } else {
                return eval_tabulated(f, t);
            }
        },
        forcing);
}

double max_abs_on_grid(const Forcing& forcing, double t0, double t1, int n) {
    if (n < 2 || !(t0 <= t1)) {
        throw ValidationError("max_abs_on_grid needs n >= 2 and t0 <= t1");
    }
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        const double t = t0 + static_cast<double>(j) * (t1 - t0) / static_cast<double>(n - 1);
        best = std::max(best, std::abs(eval(forcing, t)));
    }
    return best;
}

} // namespace stickslip
