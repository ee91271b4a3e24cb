#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mppi {

/// Thrust (N, body z) followed by body torques (N*m).
using InputVector = Eigen::Vector4d;

struct QuadrotorState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();  // world <- body
  Eigen::Vector3d linear_velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular_velocity = Eigen::Vector3d::Zero();  // body frame

  static QuadrotorState at_rest(const Eigen::Vector3d& position);

  bool all_finite() const;
};

struct QuadrotorInput {
  double thrust = 0.0;
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();

  static QuadrotorInput from_vector(const InputVector& u);
  InputVector as_vector() const;
};

/// Model constants. Defaults describe a generic ~1 kg quadrotor.
struct QuadrotorParams {
  double mass = 1.0;
  Eigen::Vector3d inertia{0.01, 0.01, 0.02};
  double gravity = 9.81;
  double dt_model = 0.02;

  /// Throws std::invalid_argument on non-positive mass, inertia or dt.
  void validate() const;
};

/// One RK4 step of rigid-body dynamics over params.dt_model, followed by
/// quaternion renormalization. Non-finite results are returned as-is; the
/// caller decides what divergence means.
QuadrotorState step(const QuadrotorState& state, const QuadrotorInput& input,
                    const QuadrotorParams& params);

inline QuadrotorState step(const QuadrotorState& state, const InputVector& input,
                           const QuadrotorParams& params) {
  return step(state, QuadrotorInput::from_vector(input), params);
}

/// Thrust balancing gravity, zero torque.
QuadrotorInput hover_input(const QuadrotorParams& params);

}  // namespace mppi
