#include "mppi/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mppi {
namespace {

using nlohmann::json;

template <int Rows>
Eigen::Matrix<double, Rows, 1> read_vec(const json& j, const char* key,
                                        const Eigen::Matrix<double, Rows, 1>& fallback) {
  if (!j.contains(key)) return fallback;
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(Rows))
    throw std::runtime_error(std::string("scenario key '") + key + "' must be an array of " +
                             std::to_string(Rows) + " numbers");
  Eigen::Matrix<double, Rows, 1> v;
  for (int i = 0; i < Rows; ++i) v[i] = arr[static_cast<std::size_t>(i)].get<double>();
  return v;
}

template <typename T>
T read(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

template <typename Derived>
json to_array(const Eigen::MatrixBase<Derived>& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

QuadrotorState read_state(const json& j) {
  QuadrotorState s;
  s.position = read_vec<3>(j, "position", s.position);
  const Eigen::Vector4d q = read_vec<4>(j, "orientation", Eigen::Vector4d(1, 0, 0, 0));
  s.orientation = Eigen::Quaterniond(q[0], q[1], q[2], q[3]);
  if (!(s.orientation.norm() > 0.0))
    throw std::runtime_error("scenario initial orientation must be nonzero");
  s.orientation.normalize();
  s.linear_velocity = read_vec<3>(j, "linear_velocity", s.linear_velocity);
  s.angular_velocity = read_vec<3>(j, "angular_velocity", s.angular_velocity);
  return s;
}

ScenarioConfig from_json(const json& j) {
  ScenarioConfig c;
  c.name = read<std::string>(j, "name", c.name);
  if (j.contains("initial_state")) c.initial_state = read_state(j.at("initial_state"));
  c.target_position = read_vec<3>(j, "target_position", c.target_position);
  if (j.contains("obstacles")) {
    for (const auto& o : j.at("obstacles")) {
      BoxObstacle box;
      box.center = read_vec<3>(o, "center", box.center);
      box.half_extents = read_vec<3>(o, "half_extents", box.half_extents);
      c.obstacles.push_back(box);
    }
  }
  c.sim_duration = read(j, "sim_duration", c.sim_duration);
  c.dt_sim = read(j, "dt_sim", c.dt_sim);
  c.horizon = read(j, "horizon", c.horizon);
  c.horizon_dt = read(j, "horizon_dt", c.horizon_dt);
  c.rng_seed = read<std::uint64_t>(j, "rng_seed", c.rng_seed);

  if (j.contains("vehicle")) {
    const json& v = j.at("vehicle");
    c.vehicle.mass = read(v, "mass", c.vehicle.mass);
    c.vehicle.inertia = read_vec<3>(v, "inertia", c.vehicle.inertia);
    c.vehicle.gravity = read(v, "gravity", c.vehicle.gravity);
  }
  if (j.contains("mppi")) {
    const json& m = j.at("mppi");
    c.mppi.sigma = read_vec<4>(m, "sigma", c.mppi.sigma);
    c.mppi.sharpness = read(m, "sharpness", c.mppi.sharpness);
    c.mppi.input_lower = read_vec<4>(m, "input_lower", c.mppi.input_lower);
    c.mppi.input_upper = read_vec<4>(m, "input_upper", c.mppi.input_upper);
  }
  if (j.contains("costs")) {
    const json& w = j.at("costs");
    c.costs.q_pos = read(w, "q_pos", c.costs.q_pos);
    c.costs.q_vel = read(w, "q_vel", c.costs.q_vel);
    c.costs.q_att = read(w, "q_att", c.costs.q_att);
    c.costs.q_omega = read(w, "q_omega", c.costs.q_omega);
    c.costs.r_input = read_vec<4>(w, "r_input", c.costs.r_input);
    c.costs.terminal_scale = read(w, "terminal_scale", c.costs.terminal_scale);
    c.costs.obstacle_penalty = read(w, "obstacle_penalty", c.costs.obstacle_penalty);
  }
  if (j.contains("backends")) {
    const json& b = j.at("backends");
    if (b.contains("batch")) {
      const json& g = b.at("batch");
      c.batch.num_lanes = read(g, "num_lanes", c.batch.num_lanes);
      c.batch.iter_latency = read(g, "iter_latency", c.batch.iter_latency);
      c.batch.transfer_overhead = read(g, "transfer_overhead", c.batch.transfer_overhead);
    }
    if (b.contains("pipelined")) {
      const json& p = b.at("pipelined");
      c.pipelined.num_pipelines = read(p, "num_pipelines", c.pipelined.num_pipelines);
      c.pipelined.stage_size = read(p, "stage_size", c.pipelined.stage_size);
      c.pipelined.iter_latency = read(p, "iter_latency", c.pipelined.iter_latency);
      c.pipelined.transfer_overhead =
          read(p, "transfer_overhead", c.pipelined.transfer_overhead);
    }
  }
  if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());

  c.mppi.horizon = c.horizon;
  c.pipelined.horizon = c.horizon;
  c.vehicle.dt_model = c.horizon_dt;
  return c;
}

}  // namespace

BackendKind parse_backend(std::string_view name) {
  if (name == "batch") return BackendKind::batch;
  if (name == "pipelined") return BackendKind::pipelined;
  throw std::invalid_argument("unknown backend '" + std::string(name) +
                              "' (expected batch or pipelined)");
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::batch ? "batch" : "pipelined";
}

void ScenarioConfig::validate() const {
  if (!(sim_duration > 0.0)) throw std::invalid_argument("sim_duration must be positive");
  if (!(dt_sim > 0.0)) throw std::invalid_argument("dt_sim must be positive");
  if (!(horizon_dt > 0.0)) throw std::invalid_argument("horizon_dt must be positive");
  const double ratio = horizon_dt / dt_sim;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0)
    throw std::invalid_argument("horizon_dt must be an integer multiple of dt_sim");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!initial_state.all_finite() || !target_position.allFinite())
    throw std::invalid_argument("initial state and target must be finite");
  vehicle.validate();
  costs.validate();
  for (const auto& box : obstacles) box.validate();

  MppiConfig m = mppi;
  m.horizon = horizon;
  m.validate();
  accel::AccelConfig p = pipelined;
  p.horizon = horizon;
  p.validate();
  batch.validate();
}

accel::TimingReport ScenarioConfig::timing() const { return timing(backend); }

accel::TimingReport ScenarioConfig::timing(BackendKind kind) const {
  if (kind == BackendKind::batch) return accel::batch_timing(batch, horizon);
  accel::AccelConfig p = pipelined;
  p.horizon = horizon;
  return accel::pipeline_timing(p);
}

ScenarioConfig parse_scenario(std::string_view json_text) {
  try {
    return from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid scenario: ") + e.what());
  }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const ScenarioConfig& c) {
  const auto& q = c.initial_state.orientation;
  json j;
  j["name"] = c.name;
  j["initial_state"] = {
      {"position", to_array(c.initial_state.position)},
      {"orientation", {q.w(), q.x(), q.y(), q.z()}},
      {"linear_velocity", to_array(c.initial_state.linear_velocity)},
      {"angular_velocity", to_array(c.initial_state.angular_velocity)}};
  j["target_position"] = to_array(c.target_position);
  j["obstacles"] = json::array();
  for (const auto& box : c.obstacles) {
    j["obstacles"].push_back(
        {{"center", to_array(box.center)}, {"half_extents", to_array(box.half_extents)}});
  }
  j["sim_duration"] = c.sim_duration;
  j["dt_sim"] = c.dt_sim;
  j["horizon"] = c.horizon;
  j["horizon_dt"] = c.horizon_dt;
  j["rng_seed"] = c.rng_seed;
  j["vehicle"] = {{"mass", c.vehicle.mass},
                  {"inertia", to_array(c.vehicle.inertia)},
                  {"gravity", c.vehicle.gravity}};
  j["mppi"] = {{"sigma", to_array(c.mppi.sigma)},
               {"sharpness", c.mppi.sharpness},
               {"input_lower", to_array(c.mppi.input_lower)},
               {"input_upper", to_array(c.mppi.input_upper)}};
  j["costs"] = {{"q_pos", c.costs.q_pos},
                {"q_vel", c.costs.q_vel},
                {"q_att", c.costs.q_att},
                {"q_omega", c.costs.q_omega},
                {"r_input", to_array(c.costs.r_input)},
                {"terminal_scale", c.costs.terminal_scale},
                {"obstacle_penalty", c.costs.obstacle_penalty}};
  j["backend"] = std::string(to_string(c.backend));
  j["backends"] = {
      {"batch",
       {{"num_lanes", c.batch.num_lanes},
        {"iter_latency", c.batch.iter_latency},
        {"transfer_overhead", c.batch.transfer_overhead}}},
      {"pipelined",
       {{"num_pipelines", c.pipelined.num_pipelines},
        {"stage_size", c.pipelined.stage_size},
        {"iter_latency", c.pipelined.iter_latency},
        {"transfer_overhead", c.pipelined.transfer_overhead}}}};
  return j.dump(2);
}

}  // namespace mppi
