#include <random>

#include <gtest/gtest.h>

#include "mppi/cost.hpp"

namespace mppi {
namespace {

CostWeights sample_weights() {
  CostWeights w;
  w.q_pos = 100.0;
  w.q_vel = 2.0;
  w.q_att = 3.0;
  w.q_omega = 0.5;
  w.r_input = {0.1, 4.0, 4.0, 4.0};
  w.terminal_scale = 10.0;
  w.obstacle_penalty = 50.0;
  return w;
}

ReferenceEntry hover_ref(const Eigen::Vector3d& target) {
  return constant_reference(target, QuadrotorParams{}, 1).front();
}

TEST(Contains, ClosedBox) {
  const BoxObstacle box{{0, 0, 0}, {1, 1, 1}};
  EXPECT_TRUE(contains(box, {0, 0, 0}));
  EXPECT_TRUE(contains(box, {1, 0, 0}));
  EXPECT_TRUE(contains(box, {-1, 1, -1}));
  EXPECT_FALSE(contains(box, {1.001, 0, 0}));
  EXPECT_FALSE(contains(box, {0, 0, -1.5}));
}

TEST(BoxObstacle, RejectsDegenerateExtents) {
  EXPECT_THROW((BoxObstacle{{0, 0, 0}, {1, 0, 1}}.validate()), std::invalid_argument);
}

TEST(ConstantReference, HoldsTargetWithHoverInput) {
  const auto r = constant_reference({0.5, 0.5, 0.5}, QuadrotorParams{}, 25);
  ASSERT_EQ(r.size(), 25u);
  EXPECT_EQ(r.back().state.position, Eigen::Vector3d(0.5, 0.5, 0.5));
  EXPECT_DOUBLE_EQ(r.front().input[0], 9.81);
  EXPECT_THROW(constant_reference({0, 0, 0}, QuadrotorParams{}, 0), std::invalid_argument);
}

TEST(RunningCost, ZeroOnReference) {
  const auto ref = hover_ref({0.5, 0.5, 0.5});
  EXPECT_EQ(running_cost(ref.state, ref.input, ref, sample_weights(), {}), 0.0);
}

TEST(RunningCost, PositionErrorTerm) {
  CostWeights w;
  w.q_pos = 100.0;
  const auto ref = hover_ref({0, 0, 0});
  QuadrotorState x = ref.state;
  x.position.x() = 0.1;
  EXPECT_NEAR(running_cost(x, ref.input, ref, w, {}), 1.0, 1e-12);
}

TEST(RunningCost, ObstaclePenaltyWhenInside) {
  const auto w = sample_weights();
  const auto ref = hover_ref({0.25, 0.25, 0.25});
  const std::vector<BoxObstacle> boxes{{{0.25, 0.25, 0.25}, {0.1, 0.1, 0.1}}};
  EXPECT_DOUBLE_EQ(running_cost(ref.state, ref.input, ref, w, boxes), w.obstacle_penalty);

  // Two overlapping boxes both count.
  const std::vector<BoxObstacle> two{boxes[0], {{0.3, 0.3, 0.3}, {0.1, 0.1, 0.1}}};
  EXPECT_DOUBLE_EQ(running_cost(ref.state, ref.input, ref, w, two), 2 * w.obstacle_penalty);
}

TEST(RunningCost, InputDeviationTerm) {
  CostWeights w;
  w.r_input = {1.0, 2.0, 3.0, 4.0};
  const auto ref = hover_ref({0, 0, 0});
  const InputVector u = ref.input + InputVector(0.5, 0.1, -0.1, 0.2);
  EXPECT_NEAR(running_cost(ref.state, u, ref, w, {}), 0.25 + 0.02 + 0.03 + 0.16, 1e-14);
}

TEST(AttitudeError, GeodesicAngleAndSignInvariance) {
  const Eigen::Quaterniond a(Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitX()));
  const Eigen::Quaterniond b = Eigen::Quaterniond::Identity();
  EXPECT_NEAR(attitude_error(a, b), 0.3, 1e-14);
  const Eigen::Quaterniond neg(-a.w(), -a.x(), -a.y(), -a.z());
  EXPECT_NEAR(attitude_error(neg, b), 0.3, 1e-14);
  EXPECT_EQ(attitude_error(b, b), 0.0);
}

TEST(TerminalCost, ScaledStateCostWithoutInputTerm) {
  auto w = sample_weights();
  const auto ref = hover_ref({0, 0, 0});
  QuadrotorState x = ref.state;
  x.position = {0.1, -0.2, 0.05};
  x.angular_velocity = {0.3, 0.0, 0.1};
  const InputVector u = ref.input + InputVector(1.0, 0.01, 0.0, 0.0);

  EXPECT_EQ(terminal_cost(ref.state, ref.input, ref, w, {}), 0.0);

  w.terminal_scale = 1.0;
  const double input_term = w.r_input.dot((u - ref.input).cwiseAbs2());
  EXPECT_NEAR(terminal_cost(x, u, ref, w, {}), running_cost(x, u, ref, w, {}) - input_term, 1e-12);
}

TEST(TerminalCost, ScaleTimesPositionError) {
  CostWeights w;
  w.q_pos = 100.0;
  w.terminal_scale = 10.0;
  const auto ref = hover_ref({0, 0, 0});
  QuadrotorState x = ref.state;
  x.position.y() = 0.1;
  EXPECT_NEAR(terminal_cost(x, ref.input, ref, w, {}), 10.0, 1e-12);
}

TEST(CostProperties, NonnegativeSymmetricAndMonotoneInPenalty) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 0.3);
  const auto ref = hover_ref({0.25, 0.25, 0.25});
  const std::vector<BoxObstacle> boxes{{{0.25, 0.25, 0.25}, {0.1, 0.1, 0.1}}};
  for (int trial = 0; trial < 500; ++trial) {
    auto w = sample_weights();
    QuadrotorState x = ref.state;
    const Eigen::Vector3d dp(n(rng), n(rng), n(rng));
    x.position += dp;
    x.linear_velocity = {n(rng), n(rng), n(rng)};
    x.orientation = Eigen::Quaterniond(1.0, n(rng), n(rng), n(rng)).normalized();
    const InputVector u = ref.input + InputVector(n(rng), n(rng), n(rng), n(rng));

    const double c = running_cost(x, u, ref, w, boxes);
    EXPECT_GE(c, 0.0);
    EXPECT_GE(terminal_cost(x, u, ref, w, boxes), 0.0);

    QuadrotorState mirrored = x;
    mirrored.position = ref.state.position - dp;
    w.obstacle_penalty = 0.0;
    EXPECT_NEAR(running_cost(x, u, ref, w, {}), running_cost(mirrored, u, ref, w, {}),
                1e-12 * (1.0 + c));

    w.obstacle_penalty = 10.0;
    const double low = running_cost(x, u, ref, w, boxes);
    w.obstacle_penalty = 20.0;
    EXPECT_GE(running_cost(x, u, ref, w, boxes), low);
  }
}

TEST(CostWeights, RejectsNegative) {
  CostWeights w;
  EXPECT_NO_THROW(w.validate());
  w.r_input[2] = -1.0;
  EXPECT_THROW(w.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace mppi
