// Command-line front end: closed-loop runs, backend comparison, timing and
// resource estimates.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mppi/accel_model.hpp"
#include "mppi/plot.hpp"
#include "mppi/scenario.hpp"
#include "mppi/simulation.hpp"
#include "mppi/trajectory_io.hpp"
#include "mppi/utilization.hpp"

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string summary_text(const mppi::TrajectoryLog& log) {
  const auto s = mppi::summarize(log);
  std::ostringstream out;
  out << "scenario: " << log.scenario << '\n'
      << "backend: " << mppi::to_string(s.backend) << '\n'
      << "rollouts_per_update: " << s.rollouts_per_update << '\n'
      << "control_period_s: " << s.control_period << '\n'
      << "control_updates: " << s.update_count << '\n'
      << "final_position_error_m: " << s.final_position_error << '\n'
      << "input_smoothness: " << s.input_smoothness << '\n'
      << "collision: " << (s.collision ? "true" : "false") << '\n'
      << "aborted: " << (s.aborted ? "true" : "false") << '\n';
  if (log.aborted) out << "abort_reason: " << log.abort_reason << '\n';
  return out.str();
}

void write_run(const mppi::TrajectoryLog& log, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  mppi::export_csv(log, dir / (stem + "_trajectory.csv"));
  mppi::export_controls_csv(log, dir / (stem + "_controls.csv"));
  mppi::export_plot(log, dir / (stem + "_plot.svg"));
  write_text(dir / (stem + "_summary.txt"), summary_text(log));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPPI controller with a pipelined-accelerator timing model"};
  app.require_subcommand(1);

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for rollout evaluation")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run one closed-loop scenario");
  std::string scenario_path;
  std::string backend;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  run->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  run->add_option("--backend", backend, "batch or pipelined")
      ->check(CLI::IsMember({"batch", "pipelined"}));
  run->add_option("--seed", seed, "RNG seed (overrides the scenario)");
  run->add_option("--out", out_dir, "Output directory");

  auto* compare = app.add_subcommand("compare", "Run a scenario on both backends");
  std::string compare_scenario;
  std::string compare_out = "out";
  compare->add_option("--scenario", compare_scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", compare_out, "Output directory");

  auto* timing = app.add_subcommand("timing", "Pipeline timing for one accelerator configuration");
  mppi::accel::AccelConfig accel;
  timing->add_option("--pipelines", accel.num_pipelines)->required();
  timing->add_option("--stage-size", accel.stage_size)->required();
  timing->add_option("--horizon", accel.horizon)->required();
  timing->add_option("--iter-latency", accel.iter_latency, "Seconds per rollout iteration")->required();
  timing->add_option("--overhead", accel.transfer_overhead, "Seconds of transfer per update");

  auto* resources = app.add_subcommand("resources", "LUT utilization estimate from a synthesis table");
  std::string table_path;
  int pipelines = 1;
  int stage_size = 1;
  int res_horizon = 25;
  double budget = 100.0;
  resources->add_option("--table", table_path)->required()->check(CLI::ExistingFile);
  resources->add_option("--pipelines", pipelines)->required();
  resources->add_option("--stage-size", stage_size)->required();
  resources->add_option("--horizon", res_horizon);
  resources->add_option("--budget", budget, "Utilization budget in percent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = mppi::load_scenario(scenario_path);
      if (!backend.empty()) config.backend = mppi::parse_backend(backend);
      if (seed) config.rng_seed = *seed;
      const auto log = mppi::run_scenario(config, threads);
      write_run(log, out_dir, std::string(mppi::to_string(config.backend)));
      std::cout << summary_text(log);
      if (log.aborted) {
        std::cerr << "run aborted: " << log.abort_reason << '\n';
        return 2;
      }
    } else if (*compare) {
      const auto config = mppi::load_scenario(compare_scenario);
      const auto report = mppi::compare_backends(config, threads);
      write_run(report.batch, compare_out, "batch");
      write_run(report.pipelined, compare_out, "pipelined");
      write_text(fs::path(compare_out) / "comparison.txt", report.to_text());
      std::cout << report.to_text();
      if (report.batch.aborted || report.pipelined.aborted) return 2;
    } else if (*timing) {
      const auto r = mppi::accel::pipeline_timing(accel);
      std::cout << "stages: " << accel.compute_stages() << '\n'
                << "pipeline_stages_incl_terminal: " << r.pipeline_stages << '\n'
                << "initiation_interval_s: " << r.initiation_interval << '\n'
                << "fill_latency_s: " << r.fill_latency << '\n'
                << "control_period_s: " << r.control_period << '\n'
                << "rollouts_per_update: " << r.rollouts_per_update << '\n'
                << "speedup_vs_sequential: " << r.speedup_vs_sequential << '\n';
    } else if (*resources) {
      const auto rows = mppi::accel::load_utilization_table(table_path);
      const auto model = mppi::accel::fit_utilization_model(rows, budget);
      const double est = mppi::accel::estimate_utilization(pipelines, res_horizon, stage_size, model);
      std::cout << "base_fraction_percent: " << model.base_fraction << '\n'
                << "stage_cost_percent: " << model.cost_for(stage_size) << '\n'
                << "estimated_utilization_percent: " << est << '\n'
                << "budget_percent: " << budget << '\n'
                << "feasible: " << (est <= budget ? "true" : "false") << '\n';
      if (model.cost_for(stage_size) > 0.0) {
        std::cout << "max_feasible_pipelines: "
                  << mppi::accel::max_feasible_pipelines(res_horizon, stage_size, model) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return EXIT_SUCCESS;
}
