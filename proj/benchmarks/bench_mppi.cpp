#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "mppi/accel_model.hpp"
#include "mppi/mppi.hpp"

namespace {

using namespace mppi;

struct Fixture {
  QuadrotorParams params;
  CostWeights weights;
  RolloutModel model;
  Reference reference;
  QuadrotorState x0 = QuadrotorState::at_rest({0.0, 0.0, 0.0});

  explicit Fixture(int horizon) {
    weights.q_pos = 50;
    weights.q_vel = 10;
    weights.q_att = 5;
    weights.q_omega = 1;
    weights.r_input = {0.01, 1, 1, 1};
    weights.terminal_scale = 10;
    weights.obstacle_penalty = 50;
    model = make_quadrotor_model(params, weights, {{{0.25, 0.25, 0.25}, {0.1, 0.1, 0.1}}});
    reference = constant_reference({0.5, 0.5, 0.5}, params, horizon);
  }
};

void BM_QuadrotorStep(benchmark::State& state) {
  const QuadrotorParams p;
  QuadrotorState s = QuadrotorState::at_rest({0, 0, 0});
  const InputVector u = hover_input(p).as_vector() + InputVector(0.1, 0.001, 0.0, 0.0);
  for (auto _ : state) {
    s = step(s, u, p);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_QuadrotorStep);

void BM_Rollout(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  Fixture f(horizon);
  MppiConfig cfg;
  cfg.horizon = horizon;
  const auto seq = sample_sequence(cfg, hover_input(f.params).as_vector(), 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rollout(f.x0, seq, f.reference, f.model));
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_Rollout)->Arg(5)->Arg(25);

void BM_ComputeWeightsAndAggregate(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  std::vector<double> costs(static_cast<std::size_t>(n));
  InputMatrix u(n, 4);
  for (int i = 0; i < n; ++i) {
    costs[static_cast<std::size_t>(i)] = d(rng);
    for (int c = 0; c < 4; ++c) u(i, c) = d(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(aggregate_control(compute_weights(costs, 10.0), u));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ComputeWeightsAndAggregate)->Arg(200)->Arg(2000);

void BM_MppiStep(benchmark::State& state) {
  Fixture f(25);
  MppiConfig cfg;
  cfg.num_rollouts = static_cast<int>(state.range(0));
  cfg.horizon = 25;
  cfg.sigma = {2.0, 0.01, 0.01, 0.01};
  const auto threads = static_cast<unsigned>(state.range(1));
  const InputVector nominal = hover_input(f.params).as_vector();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mppi_step(cfg, f.x0, f.reference, nominal, ++seed, f.model, threads));
  }
  state.SetItemsProcessed(state.iterations() * cfg.num_rollouts);
}
BENCHMARK(BM_MppiStep)->Args({200, 1})->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);

void BM_SampleInputs(benchmark::State& state) {
  MppiConfig cfg;
  cfg.num_rollouts = static_cast<int>(state.range(0));
  const InputVector nominal(9.81, 0, 0, 0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_inputs(cfg, nominal, ++seed));
  state.SetItemsProcessed(state.iterations() * cfg.num_rollouts * cfg.horizon);
}
BENCHMARK(BM_SampleInputs)->Arg(200)->Arg(2000);

void BM_PipelineTiming(benchmark::State& state) {
  accel::AccelConfig cfg;
  for (auto _ : state) {
    cfg.stage_size = 1 + static_cast<int>(state.iterations() % 25);
    benchmark::DoNotOptimize(accel::pipeline_timing(cfg));
  }
}
BENCHMARK(BM_PipelineTiming);

}  // namespace

BENCHMARK_MAIN();
