#include <cmath>
#include <cstdio>
#include <fstream>

#include "conehull/errors.hpp"
#include "conehull/harness.hpp"

namespace conehull {
namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 20.0;

struct Mapper {
  double scale;
  double px(double x) const { return kCanvas / 2 + scale * x; }
  double py(double y) const { return kCanvas / 2 - scale * y; }
};

void append(std::string& s, const char* fmt, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  s += buf;
}

}  // namespace

SvgScene scene_from_process(const HyperplaneProcessSample& s) {
  if (s.d != 2) throw Error(ErrorKind::kInvalidArgument, "scene_from_process: d must be 2");
  SvgScene scene;
  scene.window_radius = s.window_radius;
  for (const auto& h : s.hyperplanes) {
    const Vec& u = h.direction.coords();
    const double half = std::sqrt(std::max(0.0, s.window_radius * s.window_radius - h.distance * h.distance));
    Vec foot = h.distance * u;
    Vec t(2);
    t << -u(1), u(0);
    scene.chords.emplace_back(foot - half * t, foot + half * t);
  }
  return scene;
}

std::string render_svg(const SvgScene& scene) {
  const double r = scene.window_radius > 0 ? scene.window_radius : 1.0;
  const Mapper m{(kCanvas / 2 - kMargin) / r};
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<circle cx=\"500\" cy=\"500\" r=\"%.3f\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n",
                m.scale * r);
  out += buf;
  for (const auto& poly : scene.polygons) {
    if (poly.dim() != 2) continue;
    std::string path = "<path d=\"";
    bool first = true;
    for (int i : poly.cycle()) {
      const Vec& v = poly.vertices()[static_cast<std::size_t>(i)];
      append(path, first ? "M%.3f %.3f" : " L%.3f %.3f", m.px(v(0)), m.py(v(1)));
      first = false;
    }
    path += " Z\" fill=\"#cde\" stroke=\"#246\" stroke-width=\"1.5\"/>\n";
    out += path;
  }
  for (const auto& [a, b] : scene.chords) {
    std::string path = "<path d=\"";
    append(path, "M%.3f %.3f", m.px(a(0)), m.py(a(1)));
    append(path, " L%.3f %.3f", m.px(b(0)), m.py(b(1)));
    path += "\" stroke=\"#000\" stroke-width=\"1\"/>\n";
    out += path;
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const SvgScene& scene, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kIoError, "cannot write " + path);
  f << render_svg(scene);
  if (!f) throw Error(ErrorKind::kIoError, "write failed: " + path);
}

}  // namespace conehull
