#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace mppi::accel {

/// One synthesis result: LUT utilization of P pipelines of `stages` stages
/// of `stage_size` iterations each.
struct UtilizationRow {
  int pipelines = 0;
  int stages = 0;
  int stage_size = 0;
  double utilization_percent = 0.0;
};

/// Whitespace-separated columns `pipelines stages stage_size utilization`;
/// '#' starts a comment. Throws std::runtime_error with the line number on
/// malformed input.
std::vector<UtilizationRow> parse_utilization_table(std::istream& in);
std::vector<UtilizationRow> load_utilization_table(const std::filesystem::path& path);

/// Estimated utilization = base_fraction + P * stages * stage_cost(s).
///
/// Per-stage-instance cost is tabulated by stage size rather than derived
/// from one law; measured designs do not scale linearly across stage sizes.
struct UtilizationModel {
  double base_fraction = 0.0;
  std::map<int, double> stage_cost;  // stage_size -> % per stage instance
  double budget = 100.0;

  /// Throws std::out_of_range for a stage size with no tabulated cost.
  double cost_for(int stage_size) const;
};

/// Least-squares fit of base_fraction and one stage cost per distinct stage
/// size appearing in `rows`.
UtilizationModel fit_utilization_model(std::span<const UtilizationRow> rows,
                                       double budget = 100.0);

/// Clamped below at 0.
double estimate_utilization(int pipelines, int horizon, int stage_size,
                            const UtilizationModel& model);

bool is_feasible(int pipelines, int horizon, int stage_size, const UtilizationModel& model);

/// Largest P with estimate <= budget, or 0 if even one pipeline does not fit.
/// Requires a positive stage cost.
int max_feasible_pipelines(int horizon, int stage_size, const UtilizationModel& model);

}  // namespace mppi::accel
