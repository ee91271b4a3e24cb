#include "mppi/mppi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "mppi/rng.hpp"

namespace mppi {
namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

}  // namespace

void MppiConfig::validate() const {
  if (num_rollouts < 1) throw std::invalid_argument("num_rollouts must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(sigma.array() > 0.0).all())
    throw std::invalid_argument("every sigma component must be positive");
  if (!(sharpness > 0.0)) throw std::invalid_argument("sharpness must be positive");
  if (!(input_lower.array() <= input_upper.array()).all())
    throw std::invalid_argument("input_lower must not exceed input_upper");
}

RolloutModel make_quadrotor_model(const QuadrotorParams& params, const CostWeights& weights,
                                  std::vector<BoxObstacle> obstacles) {
  params.validate();
  weights.validate();
  for (const auto& box : obstacles) box.validate();

  auto boxes = std::make_shared<const std::vector<BoxObstacle>>(std::move(obstacles));
  RolloutModel model;
  model.dynamics = [params](const QuadrotorState& x, const InputVector& u) {
    return step(x, u, params);
  };
  model.running_cost = [weights, boxes](const QuadrotorState& x, const InputVector& u,
                                        const ReferenceEntry& r) {
    return running_cost(x, u, r, weights, *boxes);
  };
  model.terminal_cost = [weights, boxes](const QuadrotorState& x, const InputVector& u,
                                         const ReferenceEntry& r) {
    return terminal_cost(x, u, r, weights, *boxes);
  };
  return model;
}

InputSequence sample_sequence(const MppiConfig& config, const InputVector& nominal,
                              std::uint64_t seed, std::size_t index) {
  InputSequence seq(config.horizon, 4);
  NormalSubstream normal(seed, index);
  for (int t = 0; t < config.horizon; ++t) {
    for (int c = 0; c < 4; ++c) {
      const double draw = nominal[c] + config.sigma[c] * normal.next();
      seq(t, c) = std::clamp(draw, config.input_lower[c], config.input_upper[c]);
    }
  }
  return seq;
}

std::vector<InputSequence> sample_inputs(const MppiConfig& config, const InputVector& nominal,
                                         std::uint64_t seed) {
  config.validate();
  std::vector<InputSequence> out;
  out.reserve(static_cast<std::size_t>(config.num_rollouts));
  for (int i = 0; i < config.num_rollouts; ++i) {
    out.push_back(sample_sequence(config, nominal, seed, static_cast<std::size_t>(i)));
  }
  return out;
}

RolloutResult rollout(const QuadrotorState& x0, const InputSequence& inputs,
                      const Reference& reference, const RolloutModel& model, bool keep_states) {
  const auto horizon = inputs.rows();
  if (horizon < 1) throw std::invalid_argument("rollout needs at least one input");
  if (static_cast<Eigen::Index>(reference.size()) < horizon)
    throw std::invalid_argument("reference shorter than horizon (" +
                                std::to_string(reference.size()) + " < " +
                                std::to_string(horizon) + ")");

  RolloutResult result;
  result.first_input = inputs.row(0).transpose();
  if (keep_states) {
    result.predicted_states.reserve(static_cast<std::size_t>(horizon) + 1);
    result.predicted_states.push_back(x0);
  }

  const auto infeasible = [&result] {
    result.total_cost = kInfeasibleCost;
    result.feasible = false;
    return result;
  };

  QuadrotorState x = x0;
  QuadrotorState last = x0;  // x_{H-1} once the loop ends
  double cost = 0.0;
  for (Eigen::Index t = 0; t < horizon; ++t) {
    const InputVector u = inputs.row(t).transpose();
    const ReferenceEntry& ref = reference[static_cast<std::size_t>(t)];
    QuadrotorState next = model.dynamics(x, u);
    cost = cost + model.running_cost(x, u, ref);
    if (!next.all_finite() || !std::isfinite(cost)) return infeasible();
    if (keep_states) result.predicted_states.push_back(next);
    last = x;
    x = std::move(next);
  }

  const auto end = static_cast<std::size_t>(horizon - 1);
  const InputVector u_end = inputs.row(horizon - 1).transpose();
  const double total = cost + model.terminal_cost(last, u_end, reference[end]);
  if (!std::isfinite(total)) return infeasible();
  result.total_cost = total;
  return result;
}

WeightSet compute_weights(std::span<const double> costs, double sharpness) {
  if (costs.empty()) throw std::invalid_argument("compute_weights needs at least one cost");
  if (!(sharpness > 0.0)) throw std::invalid_argument("sharpness must be positive");

  WeightSet out;
  out.j_min = costs[0];
  out.j_max = costs[0];
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const double j = costs[i];
    if (!std::isfinite(j))
      throw std::domain_error("non-finite cost at trajectory " + std::to_string(i));
    out.j_min = std::min(out.j_min, j);
    out.j_max = std::max(out.j_max, j);
  }

  out.weights.resize(static_cast<Eigen::Index>(costs.size()));
  const double range = out.j_max - out.j_min;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out.weights[k] = range > 0.0 ? std::exp(-sharpness * ((costs[i] - out.j_min) / range)) : 1.0;
  }
  return out;
}

InputVector aggregate_control(const WeightSet& weights, const InputMatrix& first_inputs) {
  if (weights.weights.size() != first_inputs.rows())
    throw std::invalid_argument("weight count does not match input count");

  InputVector num = InputVector::Zero();
  double den = 0.0;
  for (Eigen::Index i = 0; i < first_inputs.rows(); ++i) {
    const double w = weights.weights[i];
    for (int c = 0; c < 4; ++c) num[c] = num[c] + w * first_inputs(i, c);
    den = den + w;
  }
  return num / den;
}

StepResult mppi_step(const MppiConfig& config, const QuadrotorState& x0,
                     const Reference& reference, const InputVector& nominal,
                     std::uint64_t seed, const RolloutModel& model, unsigned threads) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.num_rollouts);

  std::vector<double> costs(n);
  InputMatrix first_inputs(config.num_rollouts, 4);
  parallel_for(n, threads, [&](std::size_t i) {
    const InputSequence seq = sample_sequence(config, nominal, seed, i);
    const RolloutResult r = rollout(x0, seq, reference, model);
    costs[i] = r.total_cost;
    first_inputs.row(static_cast<Eigen::Index>(i)) = r.first_input.transpose();
  });

  StepResult out;
  const WeightSet weights = compute_weights(costs, config.sharpness);
  out.control = aggregate_control(weights, first_inputs);
  out.diagnostics.j_min = weights.j_min;
  out.diagnostics.j_max = weights.j_max;
  double mean = 0.0;
  for (const double j : costs) {
    mean += j / static_cast<double>(n);
    if (j == kInfeasibleCost) ++out.diagnostics.infeasible;
  }
  out.diagnostics.j_mean = mean;
  return out;
}

}  // namespace mppi
