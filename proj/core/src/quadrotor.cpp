#include "mppi/quadrotor.hpp"

#include <stdexcept>

namespace mppi {
namespace {

// Quaternion stored as (w, x, y, z) so RK4 can treat it as a plain vector.
struct Flat {
  Eigen::Vector3d p;
  Eigen::Vector4d q;
  Eigen::Vector3d v;
  Eigen::Vector3d w;

  Flat axpy(double h, const Flat& d) const {
    return {p + h * d.p, q + h * d.q, v + h * d.v, w + h * d.w};
  }
};

Flat derivative(const Flat& s, const QuadrotorInput& u, const QuadrotorParams& params) {
  const Eigen::Quaterniond q(s.q[0], s.q[1], s.q[2], s.q[3]);
  const Eigen::Quaterniond qn = q.normalized();

  Flat d;
  d.p = s.v;
  d.v = qn * Eigen::Vector3d(0.0, 0.0, u.thrust / params.mass);
  d.v.z() -= params.gravity;

  // q_dot = 0.5 * q (x) (0, w)
  const Eigen::Quaterniond omega(0.0, s.w.x(), s.w.y(), s.w.z());
  const Eigen::Quaterniond qdot = q * omega;
  d.q = 0.5 * Eigen::Vector4d(qdot.w(), qdot.x(), qdot.y(), qdot.z());

  const Eigen::Vector3d& inertia = params.inertia;
  const Eigen::Vector3d momentum = inertia.cwiseProduct(s.w);
  d.w = (u.torque - s.w.cross(momentum)).cwiseQuotient(inertia);
  return d;
}

}  // namespace

QuadrotorState QuadrotorState::at_rest(const Eigen::Vector3d& position) {
  QuadrotorState s;
  s.position = position;
  return s;
}

bool QuadrotorState::all_finite() const {
  return position.allFinite() && orientation.coeffs().allFinite() &&
         linear_velocity.allFinite() && angular_velocity.allFinite();
}

QuadrotorInput QuadrotorInput::from_vector(const InputVector& u) {
  return {u[0], u.tail<3>()};
}

InputVector QuadrotorInput::as_vector() const {
  return {thrust, torque.x(), torque.y(), torque.z()};
}

void QuadrotorParams::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("quadrotor mass must be positive");
  if (!(inertia.array() > 0.0).all())
    throw std::invalid_argument("quadrotor inertia components must be positive");
  if (!(gravity >= 0.0)) throw std::invalid_argument("gravity must be nonnegative");
  if (!(dt_model > 0.0)) throw std::invalid_argument("model time step must be positive");
}

QuadrotorState step(const QuadrotorState& state, const QuadrotorInput& input,
                    const QuadrotorParams& params) {
  const double dt = params.dt_model;
  const Eigen::Quaterniond& q0 = state.orientation;
  const Flat s{state.position, Eigen::Vector4d(q0.w(), q0.x(), q0.y(), q0.z()),
               state.linear_velocity, state.angular_velocity};

  const Flat k1 = derivative(s, input, params);
  const Flat k2 = derivative(s.axpy(0.5 * dt, k1), input, params);
  const Flat k3 = derivative(s.axpy(0.5 * dt, k2), input, params);
  const Flat k4 = derivative(s.axpy(dt, k3), input, params);

  const double w = dt / 6.0;
  QuadrotorState next;
  next.position = s.p + w * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  next.linear_velocity = s.v + w * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  next.angular_velocity = s.w + w * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
  const Eigen::Vector4d q = s.q + w * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  next.orientation = Eigen::Quaterniond(q[0], q[1], q[2], q[3]).normalized();
  return next;
}

QuadrotorInput hover_input(const QuadrotorParams& params) {
  return {params.mass * params.gravity, Eigen::Vector3d::Zero()};
}

}  // namespace mppi
