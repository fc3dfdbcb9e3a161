#include "stickslip/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stickslip/errors.hpp"

namespace stickslip {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 45.0;
constexpr double kBottom = 455.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(const std::vector<double>& values) {
    double lo = values.front();
    double hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.1;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

/// Largest of {1, 2, 5} x 10^k giving at most `target` ticks over the span.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r <= 1.0) {
        return mag;
    }
    if (r <= 2.0) {
        return 2.0 * mag;
    }
    if (r <= 5.0) {
        return 5.0 * mag;
    }
    return 10.0 * mag;
}

std::string fmt_tick(double value) {
    if (value == 0.0) {
        value = 0.0;  // normalize -0 from tick rounding
    }
    std::ostringstream os;
    os << value;
    return os.str();
}

} // namespace

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<double>& t,
                     const std::vector<double>& y) {
    if (t.size() != y.size() || t.empty()) {
        throw ValidationError("plot series must be nonempty and equal length");
    }

    const Range rx = padded_range(t);
    const Range ry = padded_range(y);
    const auto sx = [&](double v) {
        return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * (kRight - kLeft);
    };
    const auto sy = [&](double v) {
        return kBottom - (v - ry.lo) / (ry.hi - ry.lo) * (kBottom - kTop);
    };

    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"25\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    const double x_step = nice_step(rx.hi - rx.lo, 8);
    for (double v = std::ceil(rx.lo / x_step) * x_step; v <= rx.hi + 1e-12 * x_step;
         v += x_step) {
        const double px = sx(v);
        out << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
            << kBottom << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }
    const double y_step = nice_step(ry.hi - ry.lo, 6);
    for (double v = std::ceil(ry.lo / y_step) * y_step; v <= ry.hi + 1e-12 * y_step;
         v += y_step) {
        const double py = sy(v);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kRight
            << "\" y2=\"" << py << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(v) << "</text>\n";
    }

    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
        << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kRight << "\" y=\"" << kBottom + 34
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">t</text>\n";
    out << "<text x=\"" << kLeft << "\" y=\"" << kTop - 8
        << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"12\">" << y_label
        << "</text>\n";

    const std::size_t stride = std::max<std::size_t>(1, t.size() / 2000);
    out << "<polyline fill=\"none\" stroke=\"#27627f\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < t.size(); i += stride) {
        out << sx(t[i]) << ',' << sy(y[i]) << ' ';
    }
    if ((t.size() - 1) % stride != 0) {
        out << sx(t.back()) << ',' << sy(y.back()) << ' ';
    }
    out << "\"/>\n</svg>\n";
    if (!out) {
        throw Error("failed while writing '" + path + "'");
    }
}

void write_trajectory_plots(const Trajectory& traj, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::size_t n = traj.states.size();
    std::vector<double> t(n);
    std::vector<double> series(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = traj.states[i].t;
    }

    const auto emit = [&](const char* file, const char* title, const char* label,
                          double State::* member) {
        for (std::size_t i = 0; i < n; ++i) {
            series[i] = traj.states[i].*member;
        }
        write_line_plot((std::filesystem::path(dir) / file).string(), title, label, t, series);
    };
    emit("x.svg", "displacement", "x", &State::x);
    emit("v.svg", "velocity", "v", &State::v);
    emit("Fs.svg", "spring force", "Fs", &State::F_s);
    emit("Fd.svg", "dashpot force", "Fd", &State::F_d);
}

} // namespace stickslip
