#include "mppi/simulation.hpp"

#include <cmath>
#include <sstream>

#include "mppi/mppi.hpp"
#include "mppi/rng.hpp"

namespace mppi {

TrajectoryLog run_scenario(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  const accel::TimingReport timing = config.timing();

  MppiConfig mppi = config.mppi;
  mppi.horizon = config.horizon;
  mppi.num_rollouts = timing.rollouts_per_update;

  QuadrotorParams predict = config.vehicle;
  predict.dt_model = config.horizon_dt;
  QuadrotorParams physics = config.vehicle;
  physics.dt_model = config.dt_sim;

  const RolloutModel model = make_quadrotor_model(predict, config.costs, config.obstacles);
  const Reference reference = constant_reference(config.target_position, predict, config.horizon);

  TrajectoryLog log;
  log.scenario = config.name;
  log.backend = config.backend;
  log.rollouts_per_update = timing.rollouts_per_update;
  log.control_period = timing.control_period;
  log.target = config.target_position;
  log.obstacles = config.obstacles;

  const auto steps = static_cast<long long>(std::llround(config.sim_duration / config.dt_sim));
  log.steps.reserve(static_cast<std::size_t>(steps) + 1);

  // Absorbs rounding in n * dt_sim vs k * period when both land on the same
  // instant.
  const double slack = 1e-9 * config.dt_sim;

  QuadrotorState state = config.initial_state;
  InputVector control = hover_input(config.vehicle).as_vector();
  long long next_update = 0;

  for (long long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * config.dt_sim;
    if (t + slack >= static_cast<double>(next_update) * timing.control_period) {
      const auto seed = mix_seed(config.rng_seed, static_cast<std::uint64_t>(next_update));
      const StepResult r = mppi_step(mppi, state, reference, control, seed, model, threads);
      control = r.control;
      log.updates.push_back({t, control, r.diagnostics.j_min, r.diagnostics.j_max,
                             r.diagnostics.j_mean, r.diagnostics.infeasible,
                             timing.control_period});
      next_update = static_cast<long long>(std::floor((t + slack) / timing.control_period)) + 1;
    }
    log.steps.push_back({t, state, control});

    QuadrotorState next = step(state, control, physics);
    if (!next.all_finite()) {
      std::ostringstream why;
      why << "non-finite state after t=" << t << " s";
      log.aborted = true;
      log.abort_reason = why.str();
      break;
    }
    state = next;
  }
  if (!log.aborted) {
    log.steps.push_back({static_cast<double>(steps) * config.dt_sim, state, control});
  }

  log.collision = detect_collision(log);
  log.final_position_error = (log.steps.back().state.position - config.target_position).norm();
  return log;
}

bool detect_collision(const TrajectoryLog& log) {
  for (const auto& rec : log.steps) {
    for (const auto& box : log.obstacles) {
      if (contains(box, rec.state.position)) return true;
    }
  }
  return false;
}

BackendSummary summarize(const TrajectoryLog& log) {
  BackendSummary s;
  s.backend = log.backend;
  s.rollouts_per_update = log.rollouts_per_update;
  s.control_period = log.control_period;
  s.update_count = static_cast<int>(log.updates.size());
  s.final_position_error = log.final_position_error;
  s.collision = log.collision;
  s.aborted = log.aborted;
  if (log.updates.size() > 1) {
    double total = 0.0;
    for (std::size_t k = 1; k < log.updates.size(); ++k) {
      total += (log.updates[k].control - log.updates[k - 1].control).cwiseAbs().sum();
    }
    s.input_smoothness = total / (4.0 * static_cast<double>(log.updates.size() - 1));
  }
  return s;
}

ComparisonReport compare_backends(const ScenarioConfig& config, unsigned threads) {
  ComparisonReport report;
  ScenarioConfig c = config;
  c.backend = BackendKind::batch;
  report.batch = run_scenario(c, threads);
  c.backend = BackendKind::pipelined;
  report.pipelined = run_scenario(c, threads);
  report.batch_summary = summarize(report.batch);
  report.pipelined_summary = summarize(report.pipelined);
  report.update_ratio = static_cast<double>(report.pipelined_summary.update_count) /
                        static_cast<double>(report.batch_summary.update_count);
  return report;
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  const auto row = [&out](const BackendSummary& s) {
    out << to_string(s.backend) << ": rollouts/update=" << s.rollouts_per_update
        << " control_period=" << s.control_period << " s updates=" << s.update_count
        << " final_error=" << s.final_position_error << " m"
        << " input_smoothness=" << s.input_smoothness
        << " collision=" << (s.collision ? "yes" : "no")
        << (s.aborted ? " ABORTED" : "") << '\n';
  };
  row(batch_summary);
  row(pipelined_summary);
  out << "update_ratio (pipelined/batch)=" << update_ratio << '\n';
  return out.str();
}

}  // namespace mppi
