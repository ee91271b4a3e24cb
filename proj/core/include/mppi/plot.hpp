#pragma once

#include <filesystem>
#include <iosfwd>

#include "mppi/simulation.hpp"

namespace mppi {

/// Static SVG figure of a run: oblique 3D view of the position path (with
/// obstacle outlines and the target), position vs time, thrust vs time and
/// torques vs time.
void write_plot_svg(const TrajectoryLog& log, std::ostream& out);
void export_plot(const TrajectoryLog& log, const std::filesystem::path& path);

}  // namespace mppi
