#include "matchlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace matchlab {

namespace {

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

std::string render_svg(const PointConfig& config, const WindowMatching& wm, int width,
                       int height) {
  if (config.dim != 1) fail(Err::InvalidInput, "render_svg draws d=1 configurations");
  double lo = config.window[0].first, hi = config.window[0].second;
  double pad = 0.04 * (hi - lo);
  auto sx = [&](double x) {
    return (x - lo + pad) / (hi - lo + 2 * pad) * static_cast<double>(width);
  };
  double base = height / 2.0;
  double tick = height * 0.05;
  double max_arc = height / 2.0 - 8.0;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
       "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
       " " + std::to_string(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<line x1=\"0\" y1=\"" + num(base) + "\" x2=\"" + std::to_string(width) + "\" y2=\"" +
       num(base) + "\" stroke=\"#888\" stroke-width=\"1\"/>\n";

  // arcs first, ticks on top
  double longest = 1.0;
  for (auto& e : wm.match.edges) {
    double xa = config.red1(e.first);
    double xb = wm.match.mode == Mode::two_colour ? config.blue1(e.second)
                                                  : config.red1(e.second);
    longest = std::max(longest, std::fabs(sx(xb) - sx(xa)));
  }
  for (auto& e : wm.match.edges) {
    double xr = config.red1(e.first);
    double xo = wm.match.mode == Mode::two_colour ? config.blue1(e.second)
                                                  : config.red1(e.second);
    bool up = xr < xo;  // right-oriented: red endpoint on the left
    if (wm.match.mode == Mode::one_colour) up = true;
    double x1 = sx(std::min(xr, xo)), x2 = sx(std::max(xr, xo));
    double r = (x2 - x1) / 2.0;
    double ry = std::min(r, max_arc * (r / (longest / 2.0 + 1e-9)));
    ry = std::max(ry, 2.0);
    s += "<path d=\"M " + num(x1) + " " + num(base) + " A " + num(r) + " " + num(ry) + " 0 0 " +
         (up ? "1" : "0") + " " + num(x2) + " " + num(base) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  }
  auto ticks = [&](const std::vector<double>& pts, const char* colour) {
    for (double x : pts) {
      s += "<line x1=\"" + num(sx(x)) + "\" y1=\"" + num(base - tick) + "\" x2=\"" +
           num(sx(x)) + "\" y2=\"" + num(base + tick) + "\" stroke=\"" + colour +
           "\" stroke-width=\"1.6\"/>\n";
    }
  };
  ticks(config.red, "#d22");
  ticks(config.blue, "#27b");
  for (int b : wm.boundary) {
    double x = *config.point_at(b);
    s += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(base) +
         "\" r=\"3\" fill=\"none\" stroke=\"#999\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace matchlab
