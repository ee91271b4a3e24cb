#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mppi/cost.hpp"
#include "mppi/quadrotor.hpp"

namespace mppi {

struct MppiConfig {
  int num_rollouts = 200;
  int horizon = 25;
  Eigen::Vector4d sigma{1.0, 0.01, 0.01, 0.01};
  double sharpness = 10.0;
  Eigen::Vector4d input_lower{0.0, -0.1, -0.1, -0.1};
  Eigen::Vector4d input_upper{20.0, 0.1, 0.1, 0.1};

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// H rows of (thrust, tx, ty, tz).
using InputSequence = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;
/// N rows of first inputs, one per trajectory.
using InputMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

/// Cost assigned to a rollout whose state or cost left the finite range.
inline constexpr double kInfeasibleCost = std::numeric_limits<double>::max();

struct RolloutResult {
  double total_cost = 0.0;
  InputVector first_input = InputVector::Zero();
  bool feasible = true;
  std::vector<QuadrotorState> predicted_states;  // filled on request only
};

struct WeightSet {
  Eigen::VectorXd weights;
  double j_min = 0.0;
  double j_max = 0.0;
};

using DynamicsFn = std::function<QuadrotorState(const QuadrotorState&, const InputVector&)>;
using StageCostFn =
    std::function<double(const QuadrotorState&, const InputVector&, const ReferenceEntry&)>;

/// The system model F and the cost pair (L, phi) used by a rollout.
struct RolloutModel {
  DynamicsFn dynamics;
  StageCostFn running_cost;
  StageCostFn terminal_cost;
};

/// Quadrotor dynamics with the quadratic/obstacle costs. Captures copies of
/// every argument.
RolloutModel make_quadrotor_model(const QuadrotorParams& params, const CostWeights& weights,
                                  std::vector<BoxObstacle> obstacles);

/// Trajectory `index` of the sample set for `seed`. Entries are
/// nominal + sigma * z, clamped to the input bounds, with z drawn from the
/// (seed, index) substream in row-major order.
InputSequence sample_sequence(const MppiConfig& config, const InputVector& nominal,
                              std::uint64_t seed, std::size_t index);

std::vector<InputSequence> sample_inputs(const MppiConfig& config, const InputVector& nominal,
                                         std::uint64_t seed);

RolloutResult rollout(const QuadrotorState& x0, const InputSequence& inputs,
                      const Reference& reference, const RolloutModel& model,
                      bool keep_states = false);

/// w_i = exp(-h (J_i - J_min) / (J_max - J_min)); all ones when the range
/// is empty. Throws std::domain_error on NaN or infinite costs.
WeightSet compute_weights(std::span<const double> costs, double sharpness);

/// sum_i w_i u_i / sum_i w_i, accumulated for i = 0..N-1 in order.
InputVector aggregate_control(const WeightSet& weights, const InputMatrix& first_inputs);

struct StepDiagnostics {
  double j_min = 0.0;
  double j_max = 0.0;
  double j_mean = 0.0;
  int infeasible = 0;
};

struct StepResult {
  InputVector control = InputVector::Zero();
  StepDiagnostics diagnostics;
};

/// One controller update: sample, roll out, weight, aggregate. Rollouts are
/// spread over `threads` workers; the result does not depend on it.
StepResult mppi_step(const MppiConfig& config, const QuadrotorState& x0,
                     const Reference& reference, const InputVector& nominal,
                     std::uint64_t seed, const RolloutModel& model, unsigned threads = 1);

}  // namespace mppi
