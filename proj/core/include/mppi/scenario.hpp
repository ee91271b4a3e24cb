#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mppi/accel_model.hpp"
#include "mppi/cost.hpp"
#include "mppi/mppi.hpp"
#include "mppi/quadrotor.hpp"

namespace mppi {

enum class BackendKind { batch, pipelined };

/// Throws std::invalid_argument for anything but "batch" / "pipelined".
BackendKind parse_backend(std::string_view name);
std::string_view to_string(BackendKind kind);

/// Closed-loop experiment description. Both backend configurations are
/// carried so one file can drive either backend (and the comparison);
/// `backend` selects the one used by a single run.
///
/// `horizon` and `horizon_dt` are authoritative: they override
/// mppi.horizon, pipelined.horizon and vehicle.dt_model at run time, and
/// the rollout count comes from the selected backend.
struct ScenarioConfig {
  std::string name = "scenario";
  QuadrotorState initial_state;
  Eigen::Vector3d target_position = Eigen::Vector3d::Zero();
  std::vector<BoxObstacle> obstacles;

  double sim_duration = 10.0;
  double dt_sim = 0.002;
  int horizon = 25;
  double horizon_dt = 0.02;

  QuadrotorParams vehicle;
  MppiConfig mppi;
  CostWeights costs;

  accel::BatchBackendConfig batch;
  accel::AccelConfig pipelined;
  BackendKind backend = BackendKind::pipelined;

  std::uint64_t rng_seed = 1;

  void validate() const;

  /// Timing of the selected backend.
  accel::TimingReport timing() const;
  accel::TimingReport timing(BackendKind kind) const;
};

/// Parses the JSON scenario format. Missing keys keep their defaults.
/// Errors are std::runtime_error naming the offending key.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace mppi
