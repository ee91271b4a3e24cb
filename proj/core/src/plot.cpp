#include "mppi/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "mppi/trajectory_io.hpp"

namespace mppi {
namespace {

constexpr double kPanelW = 460.0;
constexpr double kPanelH = 300.0;
constexpr double kMargin = 45.0;
constexpr std::array<const char*, 4> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

struct Panel {
  double x0, y0;  // top-left corner on the canvas
  Range xr, yr;

  double px(double x) const { return x0 + kMargin + (x - xr.lo) / (xr.hi - xr.lo) * (kPanelW - 2 * kMargin); }
  double py(double y) const { return y0 + kPanelH - kMargin - (y - yr.lo) / (yr.hi - yr.lo) * (kPanelH - 2 * kMargin); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void frame(std::ostream& out, const Panel& p, const std::string& title, bool axes_labels) {
  out << "<rect x=\"" << num(p.x0 + kMargin) << "\" y=\"" << num(p.y0 + kMargin)
      << "\" width=\"" << num(kPanelW - 2 * kMargin) << "\" height=\""
      << num(kPanelH - 2 * kMargin) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<text x=\"" << num(p.x0 + kPanelW / 2) << "\" y=\"" << num(p.y0 + 25)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  if (!axes_labels) return;
  for (double f : {0.0, 0.5, 1.0}) {
    const double xv = p.xr.lo + f * (p.xr.hi - p.xr.lo);
    const double yv = p.yr.lo + f * (p.yr.hi - p.yr.lo);
    out << "<text x=\"" << num(p.px(xv)) << "\" y=\"" << num(p.y0 + kPanelH - kMargin + 15)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << tick(xv) << "</text>\n";
    out << "<text x=\"" << num(p.x0 + kMargin - 4) << "\" y=\"" << num(p.py(yv) + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << tick(yv) << "</text>\n";
  }
}

void polyline(std::ostream& out, const std::vector<std::pair<double, double>>& pts,
              const char* color, double width = 1.2) {
  if (pts.empty()) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\" points=\"";
  for (const auto& [x, y] : pts) out << num(x) << ',' << num(y) << ' ';
  out << "\"/>\n";
}

void legend(std::ostream& out, const Panel& p, std::initializer_list<const char*> names) {
  int i = 0;
  for (const char* name : names) {
    const double x = p.x0 + kPanelW - kMargin - 60;
    const double y = p.y0 + kMargin + 12 + 14 * i;
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(x + 14)
        << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << kColors[static_cast<std::size_t>(i)]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y) << "\" font-size=\"10\">" << name
        << "</text>\n";
    ++i;
  }
}

// Oblique projection: x to the right, y receding up-right, z up.
std::pair<double, double> project(const Eigen::Vector3d& p) {
  return {p.x() + 0.5 * p.y(), p.z() + 0.35 * p.y()};
}

void time_series(std::ostream& out, const TrajectoryLog& log, double x0, double y0,
                 const std::string& title, std::initializer_list<const char*> names,
                 const std::function<double(const StepRecord&, int)>& value, int channels) {
  Panel p{x0, y0, {}, {}};
  for (const auto& r : log.steps) {
    p.xr.add(r.t);
    for (int c = 0; c < channels; ++c) p.yr.add(value(r, c));
  }
  p.xr.pad();
  p.yr.pad();
  frame(out, p, title, true);
  for (int c = 0; c < channels; ++c) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(log.steps.size());
    for (const auto& r : log.steps) pts.emplace_back(p.px(r.t), p.py(value(r, c)));
    polyline(out, pts, kColors[static_cast<std::size_t>(c)]);
  }
  legend(out, p, names);
}

}  // namespace

void write_plot_svg(const TrajectoryLog& log, std::ostream& out) {
  const double width = 2 * kPanelW;
  const double height = 2 * kPanelH + 30;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << log.scenario << " / "
      << to_string(log.backend) << " (N=" << log.rollouts_per_update
      << ", period=" << tick(log.control_period) << " s, final error="
      << tick(log.final_position_error) << " m" << (log.collision ? ", COLLISION" : "")
      << (log.aborted ? ", ABORTED" : "") << ")</text>\n";

  // 3D path.
  {
    Panel p{0, 30, {}, {}};
    std::vector<std::array<Eigen::Vector3d, 8>> corners;
    for (const auto& box : log.obstacles) {
      std::array<Eigen::Vector3d, 8> c;
      for (int k = 0; k < 8; ++k) {
        const Eigen::Vector3d sign((k & 1) ? 1 : -1, (k & 2) ? 1 : -1, (k & 4) ? 1 : -1);
        c[static_cast<std::size_t>(k)] = box.center + sign.cwiseProduct(box.half_extents);
      }
      corners.push_back(c);
    }
    const auto add = [&p](const Eigen::Vector3d& v) {
      const auto [x, y] = project(v);
      p.xr.add(x);
      p.yr.add(y);
    };
    for (const auto& r : log.steps) add(r.state.position);
    for (const auto& c : corners) {
      for (const auto& v : c) add(v);
    }
    add(log.target);
    // Equal scale on both screen axes.
    const double span = std::max(p.xr.hi - p.xr.lo, p.yr.hi - p.yr.lo);
    const double cx = 0.5 * (p.xr.hi + p.xr.lo);
    const double cy = 0.5 * (p.yr.hi + p.yr.lo);
    p.xr = {cx - span / 2, cx + span / 2};
    p.yr = {cy - span / 2, cy + span / 2};
    p.xr.pad();
    p.yr.pad();
    frame(out, p, "position path (oblique 3D)", false);

    for (const auto& c : corners) {
      for (int a = 0; a < 8; ++a) {
        for (int bit : {1, 2, 4}) {
          const int b = a | bit;
          if (b == a) continue;
          const auto [xa, ya] = project(c[static_cast<std::size_t>(a)]);
          const auto [xb, yb] = project(c[static_cast<std::size_t>(b)]);
          out << "<line x1=\"" << num(p.px(xa)) << "\" y1=\"" << num(p.py(ya)) << "\" x2=\""
              << num(p.px(xb)) << "\" y2=\"" << num(p.py(yb))
              << "\" stroke=\"#e41a1c\" stroke-width=\"1.5\"/>\n";
        }
      }
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : log.steps) {
      const auto [x, y] = project(r.state.position);
      pts.emplace_back(p.px(x), p.py(y));
    }
    polyline(out, pts, kColors[0], 1.6);
    const auto [tx, ty] = project(log.target);
    out << "<circle cx=\"" << num(p.px(tx)) << "\" cy=\"" << num(p.py(ty))
        << "\" r=\"4\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
    if (!pts.empty()) {
      out << "<circle cx=\"" << num(pts.front().first) << "\" cy=\"" << num(pts.front().second)
          << "\" r=\"3\" fill=\"#444\"/>\n";
    }
  }

  time_series(out, log, kPanelW, 30, "position [m] vs time [s]", {"x", "y", "z"},
              [](const StepRecord& r, int c) { return r.state.position[c]; }, 3);
  time_series(out, log, 0, 30 + kPanelH, "thrust [N] vs time [s]", {"thrust"},
              [](const StepRecord& r, int) { return r.input[0]; }, 1);
  time_series(out, log, kPanelW, 30 + kPanelH, "torques [N m] vs time [s]",
              {"tx", "ty", "tz"}, [](const StepRecord& r, int c) { return r.input[c + 1]; }, 3);
  out << "</svg>\n";
}

void export_plot(const TrajectoryLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::filesystem::filesystem_error("cannot open file for writing", path,
                                            std::make_error_code(std::errc::io_error));
  }
  write_plot_svg(log, out);
  out.flush();
  if (!out) {
    throw std::filesystem::filesystem_error("write failed", path,
                                            std::make_error_code(std::errc::io_error));
  }
}

}  // namespace mppi
