#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "mppi/quadrotor.hpp"

namespace mppi {

/// Target state and input for one horizon step.
struct ReferenceEntry {
  QuadrotorState state;
  InputVector input = InputVector::Zero();
};

/// One entry per horizon step.
using Reference = std::vector<ReferenceEntry>;

/// Hover at `target` for `horizon` steps.
Reference constant_reference(const Eigen::Vector3d& target, const QuadrotorParams& params,
                             int horizon);

struct CostWeights {
  double q_pos = 0.0;
  double q_vel = 0.0;
  double q_att = 0.0;
  double q_omega = 0.0;
  Eigen::Vector4d r_input = Eigen::Vector4d::Zero();
  double terminal_scale = 1.0;
  double obstacle_penalty = 0.0;

  void validate() const;
};

/// Axis-aligned box. Closed: points on a face are inside.
struct BoxObstacle {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d half_extents = Eigen::Vector3d::Ones();

  void validate() const;
};

bool contains(const BoxObstacle& obstacle, const Eigen::Vector3d& point);

/// Geodesic angle between two attitudes, in [0, pi]. q and -q are the same
/// attitude.
double attitude_error(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

/// Quadratic tracking cost plus obstacle_penalty per box containing the
/// position.
double running_cost(const QuadrotorState& x, const InputVector& u, const ReferenceEntry& ref,
                    const CostWeights& weights, std::span<const BoxObstacle> obstacles);

/// terminal_scale * running_cost without the input term.
double terminal_cost(const QuadrotorState& x, const InputVector& u, const ReferenceEntry& ref,
                     const CostWeights& weights, std::span<const BoxObstacle> obstacles);

}  // namespace mppi
