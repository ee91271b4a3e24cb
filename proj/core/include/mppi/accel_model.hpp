#pragma once

#include <cstdint>

namespace mppi::accel {

/// Pipelined rollout accelerator: P pipelines, each a chain of
/// ceil(H / stage_size) stages that run stage_size rollout iterations apiece.
struct AccelConfig {
  int num_pipelines = 200;
  int horizon = 25;
  int stage_size = 1;
  double iter_latency = 8e-3;       // s per rollout iteration in one stage
  double transfer_overhead = 0.0;   // s per control update

  void validate() const;
  int compute_stages() const;
};

/// Data-parallel backend (GPU-like): every lane runs a whole rollout.
struct BatchBackendConfig {
  int num_lanes = 2000;
  double iter_latency = 8e-4;
  double transfer_overhead = 0.0;

  void validate() const;
};

struct TimingReport {
  double fill_latency = 0.0;      // s until the first result set
  double control_period = 0.0;    // s between control outputs in steady state
  double initiation_interval = 0.0;
  int rollouts_per_update = 0;
  int pipeline_stages = 0;        // includes the terminal-cost stage when stage_size == 1
  double speedup_vs_sequential = 1.0;
};

/// Loop iterations to push k sequences through an H-step rollout one at a time.
std::uint64_t sequential_iterations(std::uint64_t k, std::uint64_t horizon);

/// Same work through an H-stage pipeline: fill, then one result per iteration.
std::uint64_t pipelined_iterations(std::uint64_t k, std::uint64_t horizon);

/// H k / (k + H - 1).
double speedup(std::uint64_t k, std::uint64_t horizon);

/// Throws std::invalid_argument if the configuration is invalid (in
/// particular stage_size > horizon).
TimingReport pipeline_timing(const AccelConfig& config);

TimingReport batch_timing(const BatchBackendConfig& config, int horizon);

}  // namespace mppi::accel
