#include "apmin/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "apmin/errors.hpp"

namespace apmin {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void emit_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("emit_csv: cannot open '" + path + "' for writing");
  out << "k,L,step_x,step_y,residual,lambda,mu,inexact\n";
  for (const auto& rec : traj.records) {
    out << rec.k << ',' << format_double(rec.value.as_double()) << ','
        << format_double(rec.step_x) << ',' << format_double(rec.step_y) << ','
        << format_double(rec.residual_norm) << ','
        << format_double(rec.lambda) << ',' << format_double(rec.mu) << ','
        << (rec.inexact ? 1 : 0) << '\n';
  }
  if (!out.good()) throw Error("emit_csv: write to '" + path + "' failed");
}

namespace {

double parse_double_field(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error("CSV: bad numeric field '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<CsvRow> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_trajectory_csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) ||
      line != "k,L,step_x,step_y,residual,lambda,mu,inexact") {
    throw Error("read_trajectory_csv: unexpected header in '" + path + "'");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      throw Error("read_trajectory_csv: malformed row '" + line + "'");
    }
    CsvRow row;
    row.k = std::stol(fields[0]);
    row.L = parse_double_field(fields[1]);
    row.step_x = parse_double_field(fields[2]);
    row.step_y = parse_double_field(fields[3]);
    row.residual = parse_double_field(fields[4]);
    row.lambda = parse_double_field(fields[5]);
    row.mu = parse_double_field(fields[6]);
    row.inexact = fields[7] == "1";
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

struct Box {
  double xmin, xmax, ymin, ymax;
};

struct Mapper {
  Box world;
  double scale;
  double cx, cy;  // world center

  // World -> canvas with the y-axis flipped.
  double px(double wx) const { return 400.0 + (wx - cx) * scale; }
  double py(double wy) const { return 400.0 - (wy - cy) * scale; }
};

void svg_polyline(std::ostream& out, const Mapper& map,
                  const std::vector<Vec>& pts, const char* color) {
  if (pts.empty()) return;
  out << "  <polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : pts) {
    out << map.px(p(0)) << ',' << map.py(p(1)) << ' ';
  }
  out << "\"/>\n";
}

void svg_marker(std::ostream& out, const Mapper& map, const Vec& p,
                const char* color, bool square) {
  if (square) {
    out << "  <rect x=\"" << map.px(p(0)) - 4 << "\" y=\"" << map.py(p(1)) - 4
        << "\" width=\"8\" height=\"8\" fill=\"" << color << "\"/>\n";
  } else {
    out << "  <circle cx=\"" << map.px(p(0)) << "\" cy=\"" << map.py(p(1))
        << "\" r=\"4\" fill=\"" << color << "\"/>\n";
  }
}

// Clip the line point + t*dir to the world box and draw the visible part.
void svg_line_shape(std::ostream& out, const Mapper& map, const LineShape& ln) {
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  const double p[2] = {ln.point(0), ln.point(1)};
  const double d[2] = {ln.direction(0), ln.direction(1)};
  const double lo[2] = {map.world.xmin, map.world.ymin};
  const double hi[2] = {map.world.xmax, map.world.ymax};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p[axis] < lo[axis] || p[axis] > hi[axis]) return;
      continue;
    }
    double t1 = (lo[axis] - p[axis]) / d[axis];
    double t2 = (hi[axis] - p[axis]) / d[axis];
    if (t1 > t2) std::swap(t1, t2);
    t_lo = std::max(t_lo, t1);
    t_hi = std::min(t_hi, t2);
  }
  if (!(t_lo < t_hi)) return;
  out << "  <line x1=\"" << map.px(p[0] + t_lo * d[0]) << "\" y1=\""
      << map.py(p[1] + t_lo * d[1]) << "\" x2=\"" << map.px(p[0] + t_hi * d[0])
      << "\" y2=\"" << map.py(p[1] + t_hi * d[1])
      << "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
}

void svg_shape(std::ostream& out, const Mapper& map, const Shape& shape) {
  if (const auto* ln = std::get_if<LineShape>(&shape)) {
    svg_line_shape(out, map, *ln);
  } else if (const auto* ci = std::get_if<CircleShape>(&shape)) {
    out << "  <circle cx=\"" << map.px(ci->center(0)) << "\" cy=\""
        << map.py(ci->center(1)) << "\" r=\"" << ci->radius * map.scale
        << "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  } else if (std::get_if<ParabolaShape>(&shape)) {
    double t0 = map.world.xmin, t1 = map.world.xmax;
    out << "  <polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" "
           "points=\"";
    const int samples = 256;
    for (int i = 0; i <= samples; ++i) {
      double t = t0 + (t1 - t0) * i / samples;
      out << map.px(t) << ',' << map.py(t * t) << ' ';
    }
    out << "\"/>\n";
  } else if (const auto* sg = std::get_if<SegmentShape>(&shape)) {
    out << "  <line x1=\"" << map.px(sg->a(0)) << "\" y1=\""
        << map.py(sg->a(1)) << "\" x2=\"" << map.px(sg->b(0)) << "\" y2=\""
        << map.py(sg->b(1))
        << "\" stroke=\"#555555\" stroke-width=\"2\"/>\n";
  }
}

}  // namespace

void emit_svg(const Trajectory& traj, const SetOracle& C, const SetOracle& D,
              const std::string& path) {
  if (C.dimension() != 2 || D.dimension() != 2 || traj.records.empty() ||
      traj.records.front().z.n() != 2 || traj.records.front().z.m() != 2) {
    throw NotDrawableError("emit_svg: only 2-D runs are drawable");
  }
  std::vector<Shape> shapes = C.outline();
  std::vector<Shape> shapes_d = D.outline();
  if (shapes.empty() || shapes_d.empty()) {
    throw NotDrawableError("emit_svg: a set has no drawable outline");
  }
  shapes.insert(shapes.end(), shapes_d.begin(), shapes_d.end());

  Box box{traj.records.front().z.x(0), traj.records.front().z.x(0),
          traj.records.front().z.x(1), traj.records.front().z.x(1)};
  std::vector<Vec> xs, ys;
  for (const auto& rec : traj.records) {
    for (const Vec* p : {&rec.z.x, &rec.z.y}) {
      box.xmin = std::min(box.xmin, (*p)(0));
      box.xmax = std::max(box.xmax, (*p)(0));
      box.ymin = std::min(box.ymin, (*p)(1));
      box.ymax = std::max(box.ymax, (*p)(1));
    }
    xs.push_back(rec.z.x);
    ys.push_back(rec.z.y);
  }
  double span = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-3});
  double pad = 0.1 * span;
  box.xmin -= pad;
  box.xmax += pad;
  box.ymin -= pad;
  box.ymax += pad;
  Mapper map{box, 800.0 / (span + 2 * pad), (box.xmin + box.xmax) / 2,
             (box.ymin + box.ymax) / 2};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("emit_svg: cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"800\" viewBox=\"0 0 800 800\">\n"
         "  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& shape : shapes) svg_shape(out, map, shape);
  svg_polyline(out, map, xs, "#1f77b4");
  svg_polyline(out, map, ys, "#d62728");
  svg_marker(out, map, xs.front(), "#2ca02c", false);
  svg_marker(out, map, ys.front(), "#2ca02c", false);
  svg_marker(out, map, xs.back(), "#1f77b4", true);
  svg_marker(out, map, ys.back(), "#d62728", true);
  out << "</svg>\n";
  if (!out.good()) throw Error("emit_svg: write to '" + path + "' failed");
}

nlohmann::json rate_report_json(const RateReport& report) {
  nlohmann::json j;
  switch (report.classification) {
    case RateReport::Kind::Finite:
      j["classification"] = "Finite";
      j["steps"] = report.finite_steps;
      break;
    case RateReport::Kind::Linear:
      j["classification"] = "Linear";
      j["tau"] = report.tau;
      break;
    case RateReport::Kind::Sublinear:
      j["classification"] = "Sublinear";
      j["exponent"] = report.exponent;
      break;
  }
  if (report.theta_estimate) j["theta"] = *report.theta_estimate;
  j["fit_r2"] = report.fit_r2;
  j["tail_start"] = report.tail_start;
  return j;
}

}  // namespace apmin
