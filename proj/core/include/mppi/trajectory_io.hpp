#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mppi/simulation.hpp"

namespace mppi {

/// Header of the per-physics-step CSV.
inline constexpr const char* kTrajectoryCsvHeader =
    "t,px,py,pz,qw,qx,qy,qz,vx,vy,vz,wx,wy,wz,thrust,tx,ty,tz";

/// Values are written in shortest round-trip form, so parsing the file back
/// reproduces every double bit for bit.
void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out);
void export_csv(const TrajectoryLog& log, const std::filesystem::path& path);

std::vector<StepRecord> parse_trajectory_csv(std::istream& in);
std::vector<StepRecord> load_trajectory_csv(const std::filesystem::path& path);

/// Per-update controller diagnostics:
/// t,thrust,tx,ty,tz,j_min,j_max,j_mean,infeasible,period
void write_controls_csv(const TrajectoryLog& log, std::ostream& out);
void export_controls_csv(const TrajectoryLog& log, const std::filesystem::path& path);

std::string format_double(double value);

}  // namespace mppi
