#include "qpic/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qpic {

namespace {

constexpr double kScale = 32.0;  // px per phase-space unit
constexpr double kHalf = 8.0;
constexpr int kCanvas = 512;

double to_px_x(double x) { return (x + kHalf) * kScale; }
double to_px_y(double p) { return (kHalf - p) * kScale; }

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  std::string s = buf;
  if (s == "-0.0000000000") s = "0.0000000000";
  return s;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void circle_element(std::ostringstream& out, const char* role, const Circle& c, const char* style) {
  out << "  <circle class=\"" << role << "\" cx=\"" << fixed(to_px_x(c.center.x)) << "\" cy=\""
      << fixed(to_px_y(c.center.p)) << "\" r=\"" << fixed(c.radius * kScale) << "\" " << style << "/>\n";
}

}  // namespace

std::string format_csv(const std::vector<TrajectorySample>& samples) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& s : samples) {
    const auto& st = s.state;
    out += sci(s.t) + ',' + sci(st.mean.x) + ',' + sci(st.mean.p) + ',' + sci(st.cov.xx()) + ',' + sci(st.cov.xp()) +
           ',' + sci(st.cov.pp()) + '\n';
  }
  return out;
}

std::string render_svg(const FrameScene& scene) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  out << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" fill=\"white\"/>\n";
  out << "  <line class=\"axis\" x1=\"0\" y1=\"256\" x2=\"512\" y2=\"256\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  out << "  <line class=\"axis\" x1=\"256\" y1=\"0\" x2=\"256\" y2=\"512\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  for (const auto& c : scene.reference_circles) {
    circle_element(out, "reference", c, "fill=\"none\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
  }
  for (const auto& l : scene.reference_lines) {
    out << "  <line class=\"reference\" x1=\"" << fixed(to_px_x(l.from.x)) << "\" y1=\"" << fixed(to_px_y(l.from.p))
        << "\" x2=\"" << fixed(to_px_x(l.to.x)) << "\" y2=\"" << fixed(to_px_y(l.to.p))
        << "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  }
  for (const auto& c : scene.vacuum_circles) {
    circle_element(out, "vacuum", c, "fill=\"none\" stroke=\"#2a7f2a\" stroke-width=\"1\" stroke-dasharray=\"2,3\"");
  }
  if (!scene.trajectory.empty()) {
    out << "  <polyline class=\"trajectory\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < scene.trajectory.size(); ++k) {
      if (k) out << ' ';
      out << fixed(to_px_x(scene.trajectory[k].x)) << ',' << fixed(to_px_y(scene.trajectory[k].p));
    }
    out << "\"/>\n";
  }
  const ContourEllipse& e = scene.contour;
  const std::string cx = fixed(to_px_x(e.center.x));
  const std::string cy = fixed(to_px_y(e.center.p));
  // SVG's y axis points down, so a counterclockwise phase-space angle is a negative rotate().
  const std::string deg = fixed(-e.orientation * 180.0 / std::numbers::pi);
  out << "  <ellipse class=\"contour\" cx=\"" << cx << "\" cy=\"" << cy << "\" rx=\"" << fixed(e.semi_major * kScale)
      << "\" ry=\"" << fixed(e.semi_minor * kScale) << "\" transform=\"rotate(" << deg << ' ' << cx << ' ' << cy
      << ")\" fill=\"#c0392b\" fill-opacity=\"0.25\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  out << "  <circle class=\"centroid\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2.5\" fill=\"#c0392b\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::vector<SvgElement> read_svg_geometry(std::string_view svg) {
  // Hand-rolled scan: polylines can be long enough to exhaust std::regex's recursion.
  auto numbers = [](std::string_view s) {
    std::vector<double> v;
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.') {
        const std::string tail(s.substr(i, 64));
        char* end = nullptr;
        const double x = std::strtod(tail.c_str(), &end);
        if (end == tail.c_str()) {
          ++i;
          continue;
        }
        v.push_back(x);
        i += static_cast<std::size_t>(end - tail.c_str());
      } else {
        ++i;
      }
    }
    return v;
  };
  auto ux = [](double px) { return px / kScale - kHalf; };
  auto up = [](double py) { return kHalf - py / kScale; };

  std::vector<SvgElement> out;
  std::size_t pos = 0;
  while ((pos = svg.find('<', pos)) != std::string_view::npos) {
    const std::size_t close = svg.find('>', pos);
    if (close == std::string_view::npos) break;
    std::string_view body = svg.substr(pos + 1, close - pos - 1);
    pos = close + 1;
    const std::size_t name_end = body.find_first_of(" \t\n/");
    const std::string tag(body.substr(0, name_end));
    if (tag != "ellipse" && tag != "circle" && tag != "line" && tag != "polyline") continue;

    std::map<std::string, std::string_view> attrs;
    std::size_t a = name_end;
    while (a != std::string_view::npos && a < body.size()) {
      const std::size_t eq = body.find("=\"", a);
      if (eq == std::string_view::npos) break;
      const std::size_t key_start = body.find_last_of(" \t\n", eq) + 1;
      const std::size_t val_end = body.find('"', eq + 2);
      if (val_end == std::string_view::npos) break;
      attrs[std::string(body.substr(key_start, eq - key_start))] = body.substr(eq + 2, val_end - eq - 2);
      a = val_end + 1;
    }

    SvgElement el;
    el.tag = tag;
    el.role = std::string(attrs["class"]);
    auto num = [&](const char* key) {
      const auto v = numbers(attrs.at(key));
      if (v.size() != 1) throw std::runtime_error(std::string("svg: bad attribute ") + key);
      return v[0];
    };
    if (tag == "ellipse") {
      const auto rot = numbers(attrs["transform"]);
      const double angle = rot.empty() ? 0.0 : -rot[0] * std::numbers::pi / 180.0;
      el.values = {ux(num("cx")), up(num("cy")), num("rx") / kScale, num("ry") / kScale, angle};
    } else if (tag == "circle") {
      el.values = {ux(num("cx")), up(num("cy")), num("r") / kScale};
    } else if (tag == "line") {
      el.values = {ux(num("x1")), up(num("y1")), ux(num("x2")), up(num("y2"))};
    } else {
      const auto pts = numbers(attrs["points"]);
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        el.values.push_back(ux(pts[k]));
        el.values.push_back(up(pts[k + 1]));
      }
    }
    out.push_back(std::move(el));
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace qpic
