#include "mppi/trajectory_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace mppi {
namespace {

constexpr std::size_t kColumns = 18;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::filesystem::filesystem_error("cannot open file for writing", path,
                                            std::make_error_code(std::errc::io_error));
  }
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::filesystem::filesystem_error("write failed", path,
                                            std::make_error_code(std::errc::io_error));
  }
}

double parse_field(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) +
                             ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  return std::string(buf.data(), ptr);
}

void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& rec : log.steps) {
    const auto& s = rec.state;
    const std::array<double, kColumns> row{
        rec.t,
        s.position.x(), s.position.y(), s.position.z(),
        s.orientation.w(), s.orientation.x(), s.orientation.y(), s.orientation.z(),
        s.linear_velocity.x(), s.linear_velocity.y(), s.linear_velocity.z(),
        s.angular_velocity.x(), s.angular_velocity.y(), s.angular_velocity.z(),
        rec.input[0], rec.input[1], rec.input[2], rec.input[3]};
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

void export_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_trajectory_csv(log, out);
  check_written(out, path);
}

std::vector<StepRecord> parse_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryCsvHeader)
    throw std::runtime_error("trajectory CSV: missing or unexpected header");

  std::vector<StepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, kColumns> v{};
    std::size_t col = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto end = comma == std::string::npos ? line.size() : comma;
      if (col >= kColumns)
        throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) +
                                 ": too many columns");
      v[col++] = parse_field(std::string_view(line).substr(start, end - start), line_no);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (col != kColumns)
      throw std::runtime_error("trajectory CSV line " + std::to_string(line_no) +
                               ": expected 18 columns");

    StepRecord rec;
    rec.t = v[0];
    rec.state.position = {v[1], v[2], v[3]};
    rec.state.orientation = Eigen::Quaterniond(v[4], v[5], v[6], v[7]);
    rec.state.linear_velocity = {v[8], v[9], v[10]};
    rec.state.angular_velocity = {v[11], v[12], v[13]};
    rec.input = {v[14], v[15], v[16], v[17]};
    records.push_back(rec);
  }
  return records;
}

std::vector<StepRecord> load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory CSV " + path.string());
  return parse_trajectory_csv(in);
}

void write_controls_csv(const TrajectoryLog& log, std::ostream& out) {
  out << "t,thrust,tx,ty,tz,j_min,j_max,j_mean,infeasible,period\n";
  for (const auto& u : log.updates) {
    out << format_double(u.t);
    for (int c = 0; c < 4; ++c) out << ',' << format_double(u.control[c]);
    out << ',' << format_double(u.j_min) << ',' << format_double(u.j_max) << ','
        << format_double(u.j_mean) << ',' << u.infeasible << ',' << format_double(u.period)
        << '\n';
  }
}

void export_controls_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_controls_csv(log, out);
  check_written(out, path);
}

}  // namespace mppi
