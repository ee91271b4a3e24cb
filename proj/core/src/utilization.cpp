#include "mppi/utilization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mppi::accel {

std::vector<UtilizationRow> parse_utilization_table(std::istream& in) {
  std::vector<UtilizationRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    UtilizationRow row;
    if (!(fields >> row.pipelines)) continue;  // blank or comment-only
    std::string extra;
    if (!(fields >> row.stages >> row.stage_size >> row.utilization_percent) ||
        (fields >> extra)) {
      throw std::runtime_error("utilization table line " + std::to_string(line_no) +
                               ": expected 4 columns");
    }
    if (row.pipelines < 1 || row.stages < 1 || row.stage_size < 1)
      throw std::runtime_error("utilization table line " + std::to_string(line_no) +
                               ": counts must be >= 1");
    rows.push_back(row);
  }
  return rows;
}

std::vector<UtilizationRow> load_utilization_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open utilization table " + path.string());
  try {
    return parse_utilization_table(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

double UtilizationModel::cost_for(int stage_size) const {
  const auto it = stage_cost.find(stage_size);
  if (it == stage_cost.end())
    throw std::out_of_range("no stage cost for stage size " + std::to_string(stage_size));
  return it->second;
}

UtilizationModel fit_utilization_model(std::span<const UtilizationRow> rows, double budget) {
  if (rows.empty()) throw std::invalid_argument("cannot fit a model to an empty table");

  std::map<int, Eigen::Index> column;  // stage_size -> design-matrix column
  for (const auto& r : rows) column.emplace(r.stage_size, 0);
  Eigen::Index next = 1;
  for (auto& [size, col] : column) col = next++;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), next);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    a(k, 0) = 1.0;
    a(k, column.at(rows[i].stage_size)) = static_cast<double>(rows[i].pipelines) * rows[i].stages;
    b[k] = rows[i].utilization_percent;
  }
  const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);

  UtilizationModel model;
  model.base_fraction = x[0];
  for (const auto& [size, col] : column) model.stage_cost[size] = x[col];
  model.budget = budget;
  return model;
}

double estimate_utilization(int pipelines, int horizon, int stage_size,
                            const UtilizationModel& model) {
  if (pipelines < 1 || horizon < 1 || stage_size < 1 || stage_size > horizon)
    throw std::invalid_argument("estimate_utilization: need P >= 1 and 1 <= s <= H");
  const int stages = (horizon + stage_size - 1) / stage_size;
  const double estimate =
      model.base_fraction + static_cast<double>(pipelines) * stages * model.cost_for(stage_size);
  return std::max(0.0, estimate);
}

bool is_feasible(int pipelines, int horizon, int stage_size, const UtilizationModel& model) {
  return estimate_utilization(pipelines, horizon, stage_size, model) <= model.budget;
}

int max_feasible_pipelines(int horizon, int stage_size, const UtilizationModel& model) {
  const double per_pipeline = model.cost_for(stage_size);
  if (!(per_pipeline > 0.0))
    throw std::invalid_argument("max_feasible_pipelines needs a positive stage cost");
  int p = 0;
  while (is_feasible(p + 1, horizon, stage_size, model)) ++p;
  return p;
}

}  // namespace mppi::accel
