#include "mppi/accel_model.hpp"

#include <stdexcept>
#include <string>

namespace mppi::accel {
namespace {

void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace

void AccelConfig::validate() const {
  if (num_pipelines < 1) throw std::invalid_argument("num_pipelines must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (stage_size < 1) throw std::invalid_argument("stage_size must be >= 1");
  if (stage_size > horizon)
    throw std::invalid_argument("stage_size " + std::to_string(stage_size) +
                                " exceeds horizon " + std::to_string(horizon));
  if (!(iter_latency > 0.0)) throw std::invalid_argument("iter_latency must be positive");
  if (!(transfer_overhead >= 0.0))
    throw std::invalid_argument("transfer_overhead must be nonnegative");
}

int AccelConfig::compute_stages() const {
  return (horizon + stage_size - 1) / stage_size;
}

void BatchBackendConfig::validate() const {
  if (num_lanes < 1) throw std::invalid_argument("num_lanes must be >= 1");
  if (!(iter_latency > 0.0)) throw std::invalid_argument("iter_latency must be positive");
  if (!(transfer_overhead >= 0.0))
    throw std::invalid_argument("transfer_overhead must be nonnegative");
}

std::uint64_t sequential_iterations(std::uint64_t k, std::uint64_t horizon) {
  require_positive(k, "k");
  require_positive(horizon, "horizon");
  return horizon * k;
}

std::uint64_t pipelined_iterations(std::uint64_t k, std::uint64_t horizon) {
  require_positive(k, "k");
  require_positive(horizon, "horizon");
  return k + horizon - 1;
}

double speedup(std::uint64_t k, std::uint64_t horizon) {
  return static_cast<double>(sequential_iterations(k, horizon)) /
         static_cast<double>(pipelined_iterations(k, horizon));
}

TimingReport pipeline_timing(const AccelConfig& config) {
  config.validate();
  const int stages = config.compute_stages();
  const double interval = config.stage_size * config.iter_latency;

  // The terminal cost runs alongside the last state update in the timing
  // model, so it adds a stage to the count but not to the fill latency.
  TimingReport r;
  r.initiation_interval = interval;
  r.fill_latency = stages * interval + config.transfer_overhead;
  r.control_period = interval + config.transfer_overhead;
  r.rollouts_per_update = config.num_pipelines;
  r.pipeline_stages = config.stage_size == 1 ? config.horizon + 1 : stages;
  r.speedup_vs_sequential =
      (config.horizon * config.iter_latency + config.transfer_overhead) / r.control_period;
  return r;
}

TimingReport batch_timing(const BatchBackendConfig& config, int horizon) {
  config.validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  TimingReport r;
  r.initiation_interval = horizon * config.iter_latency;
  r.fill_latency = r.initiation_interval + config.transfer_overhead;
  r.control_period = r.fill_latency;
  r.rollouts_per_update = config.num_lanes;
  r.pipeline_stages = 1;
  r.speedup_vs_sequential = 1.0;
  return r;
}

}  // namespace mppi::accel
