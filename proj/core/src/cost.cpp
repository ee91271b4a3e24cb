#include "mppi/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace mppi {
namespace {

double state_cost(const QuadrotorState& x, const ReferenceEntry& ref, const CostWeights& w,
                  std::span<const BoxObstacle> obstacles) {
  const double att = attitude_error(x.orientation, ref.state.orientation);
  double cost = w.q_pos * (x.position - ref.state.position).squaredNorm() +
                w.q_vel * (x.linear_velocity - ref.state.linear_velocity).squaredNorm() +
                w.q_att * att * att +
                w.q_omega * (x.angular_velocity - ref.state.angular_velocity).squaredNorm();
  for (const auto& box : obstacles) {
    if (contains(box, x.position)) cost += w.obstacle_penalty;
  }
  return cost;
}

}  // namespace

Reference constant_reference(const Eigen::Vector3d& target, const QuadrotorParams& params,
                             int horizon) {
  if (horizon < 1) throw std::invalid_argument("reference horizon must be >= 1");
  return Reference(static_cast<std::size_t>(horizon),
                   ReferenceEntry{QuadrotorState::at_rest(target),
                                  hover_input(params).as_vector()});
}

void CostWeights::validate() const {
  const bool ok = q_pos >= 0.0 && q_vel >= 0.0 && q_att >= 0.0 && q_omega >= 0.0 &&
                  (r_input.array() >= 0.0).all() && terminal_scale >= 0.0 &&
                  obstacle_penalty >= 0.0;
  if (!ok) throw std::invalid_argument("cost weights must be nonnegative");
}

void BoxObstacle::validate() const {
  if (!(half_extents.array() > 0.0).all())
    throw std::invalid_argument("obstacle half extents must be positive");
}

bool contains(const BoxObstacle& obstacle, const Eigen::Vector3d& point) {
  return ((point - obstacle.center).cwiseAbs().array() <= obstacle.half_extents.array()).all();
}

double attitude_error(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const Eigen::Quaterniond d = b.conjugate() * a;
  return 2.0 * std::atan2(d.vec().norm(), std::abs(d.w()));
}

double running_cost(const QuadrotorState& x, const InputVector& u, const ReferenceEntry& ref,
                    const CostWeights& weights, std::span<const BoxObstacle> obstacles) {
  const Eigen::Vector4d du = u - ref.input;
  return state_cost(x, ref, weights, obstacles) + weights.r_input.dot(du.cwiseAbs2());
}

double terminal_cost(const QuadrotorState& x, const InputVector& /*u*/, const ReferenceEntry& ref,
                     const CostWeights& weights, std::span<const BoxObstacle> obstacles) {
  return weights.terminal_scale * state_cost(x, ref, weights, obstacles);
}

}  // namespace mppi
