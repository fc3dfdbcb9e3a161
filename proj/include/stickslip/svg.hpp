#pragma once

#include <string>
#include <vector>

#include "stickslip/stepper.hpp"

namespace stickslip {

/// Renders one series as an 800x500 SVG polyline with round-number axis
/// ticks.  Long series are thinned for rendering only.
void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& y_label, const std::vector<double>& t,
                     const std::vector<double>& y);

/// Writes x.svg, v.svg, Fs.svg and Fd.svg for a trajectory into dir,
/// creating the directory if needed.
void write_trajectory_plots(const Trajectory& traj, const std::string& dir);

} // namespace stickslip
