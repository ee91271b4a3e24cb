#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mppi/cost.hpp"
#include "mppi/quadrotor.hpp"
#include "mppi/scenario.hpp"

namespace mppi {

/// State at time t and the input held over [t, t + dt_sim).
struct StepRecord {
  double t = 0.0;
  QuadrotorState state;
  InputVector input = InputVector::Zero();
};

struct ControlRecord {
  double t = 0.0;
  InputVector control = InputVector::Zero();
  double j_min = 0.0;
  double j_max = 0.0;
  double j_mean = 0.0;
  int infeasible = 0;
  double period = 0.0;  // control period of the backend timing model
};

struct TrajectoryLog {
  std::string scenario;
  BackendKind backend = BackendKind::pipelined;
  int rollouts_per_update = 0;
  double control_period = 0.0;
  Eigen::Vector3d target = Eigen::Vector3d::Zero();
  std::vector<BoxObstacle> obstacles;

  std::vector<StepRecord> steps;
  std::vector<ControlRecord> updates;

  bool collision = false;
  double final_position_error = 0.0;
  bool aborted = false;
  std::string abort_reason;
};

/// Runs the closed loop: physics every dt_sim, an MPPI update whenever the
/// simulated clock reaches the next multiple of the backend's control
/// period, zero-order hold in between. Deterministic for a given config;
/// `threads` only changes how rollouts are scheduled.
TrajectoryLog run_scenario(const ScenarioConfig& config, unsigned threads = 1);

/// True iff any logged position lies in any obstacle.
bool detect_collision(const TrajectoryLog& log);

struct BackendSummary {
  BackendKind backend = BackendKind::pipelined;
  int rollouts_per_update = 0;
  double control_period = 0.0;
  int update_count = 0;
  double final_position_error = 0.0;
  double input_smoothness = 0.0;  // mean |u_k - u_{k-1}| over updates and channels
  bool collision = false;
  bool aborted = false;
};

BackendSummary summarize(const TrajectoryLog& log);

struct ComparisonReport {
  TrajectoryLog batch;
  TrajectoryLog pipelined;
  BackendSummary batch_summary;
  BackendSummary pipelined_summary;
  double update_ratio = 0.0;  // pipelined / batch control updates

  std::string to_text() const;
};

/// Same scenario, once per backend.
ComparisonReport compare_backends(const ScenarioConfig& config, unsigned threads = 1);

}  // namespace mppi
