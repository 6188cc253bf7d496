#include "nhprobe/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nhprobe::plot {
namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 90, kTop = 40, kBottom = 60;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void header(std::ostringstream& o, const std::string& title) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
    << "</text>\n";
}

void axes(std::ostringstream& o, const Frame& f, const std::string& xl, const std::string& yl) {
  const double l = kLeft, r = kWidth - kRight, t = kTop, b = kHeight - kBottom;
  o << "<rect x=\"" << fmt(l) << "\" y=\"" << fmt(t) << "\" width=\"" << fmt(r - l) << "\" height=\"" << fmt(b - t)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    o << "<text x=\"" << fmt(f.px(xv)) << "\" y=\"" << fmt(b + 16) << "\" text-anchor=\"middle\">" << tick(xv)
      << "</text>\n";
    o << "<text x=\"" << fmt(l - 6) << "\" y=\"" << fmt(f.py(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
      << "</text>\n";
  }
  o << "<text x=\"" << fmt((l + r) / 2) << "\" y=\"" << fmt(kHeight - 18) << "\" text-anchor=\"middle\">"
    << escape(xl) << "</text>\n";
  o << "<text transform=\"translate(18," << fmt((t + b) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(yl) << "</text>\n";
}

std::pair<double, double> span(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double a = *lo, b = *hi;
  if (a == b) {
    a -= 0.5;
    b += 0.5;
  }
  return {a, b};
}

}  // namespace

std::string color_for(double v) {
  // Piecewise-linear approximation of viridis.
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  v = std::clamp(v, 0.0, 1.0);
  const double s = v * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), stops.size() - 2);
  const double f = s - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string line_plot_svg(const LinePlot& p) {
  if (p.x.size() != p.y.size() || p.x.empty()) throw std::invalid_argument("line plot: bad series");
  std::ostringstream o;
  header(o, p.title);
  auto [x0, x1] = span(p.x);
  const Frame f{x0, x1, p.ymin, p.ymax};
  axes(o, f, p.xlabel, p.ylabel);
  for (double v : p.vlines) {
    if (v < x0 || v > x1) continue;
    o << "<line x1=\"" << fmt(f.px(v)) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(f.px(v)) << "\" y2=\""
      << fmt(kHeight - kBottom) << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
  }
  o << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (!std::isfinite(p.y[i])) continue;
    const double y = std::clamp(p.y[i], p.ymin, p.ymax);
    o << fmt(f.px(p.x[i])) << ',' << fmt(f.py(y)) << ' ';
  }
  o << "\"/>\n</svg>\n";
  return o.str();
}

std::string heatmap_svg(const Heatmap& m) {
  if (m.xs.empty() || m.ys.empty() || m.values.size() != m.xs.size() * m.ys.size()) {
    throw std::invalid_argument("heatmap: grid is not rectangular");
  }
  // Cell edges halfway between sample points.
  auto edges = [](const std::vector<double>& v) {
    std::vector<double> e(v.size() + 1);
    if (v.size() == 1) {
      e[0] = v[0] - 0.5;
      e[1] = v[0] + 0.5;
      return e;
    }
    for (std::size_t i = 1; i < v.size(); ++i) e[i] = 0.5 * (v[i - 1] + v[i]);
    e.front() = v.front() - (e[1] - v.front());
    e.back() = v.back() + (v.back() - e[v.size() - 1]);
    return e;
  };
  const auto ex = edges(m.xs);
  const auto ey = edges(m.ys);
  const Frame f{std::min(ex.front(), ex.back()), std::max(ex.front(), ex.back()), std::min(ey.front(), ey.back()),
                std::max(ey.front(), ey.back())};
  std::ostringstream o;
  header(o, m.title);
  for (std::size_t i = 0; i < m.xs.size(); ++i) {
    for (std::size_t j = 0; j < m.ys.size(); ++j) {
      const double v = m.values[i * m.ys.size() + j];
      const double xa = f.px(ex[i]), xb = f.px(ex[i + 1]);
      const double ya = f.py(ey[j]), yb = f.py(ey[j + 1]);
      o << "<rect x=\"" << fmt(std::min(xa, xb)) << "\" y=\"" << fmt(std::min(ya, yb)) << "\" width=\""
        << fmt(std::abs(xb - xa)) << "\" height=\"" << fmt(std::abs(yb - ya)) << "\" fill=\""
        << (std::isfinite(v) ? color_for(v) : std::string("#bbbbbb")) << "\"/>\n";
    }
  }
  axes(o, f, m.xlabel, m.ylabel);
  o << "<clipPath id=\"plot\"><rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
    << fmt(kWidth - kLeft - kRight) << "\" height=\"" << fmt(kHeight - kTop - kBottom) << "\"/></clipPath>\n";
  for (const Polyline& line : m.boundary) {
    if (line.size() < 2) continue;
    o << "<polyline clip-path=\"url(#plot)\" fill=\"none\" stroke=\"white\" stroke-width=\"2\" "
         "stroke-dasharray=\"6,4\" points=\"";
    for (const auto& [x, y] : line) o << fmt(f.px(x)) << ',' << fmt(f.py(y)) << ' ';
    o << "\"/>\n";
  }
  // Color bar.
  const double bx = kWidth - kRight + 20, top = kTop, bottom = kHeight - kBottom;
  for (int k = 0; k < 50; ++k) {
    const double y = bottom - (bottom - top) * (k + 1) / 50.0;
    o << "<rect x=\"" << fmt(bx) << "\" y=\"" << fmt(y) << "\" width=\"16\" height=\""
      << fmt((bottom - top) / 50.0 + 0.5) << "\" fill=\"" << color_for((k + 0.5) / 50.0) << "\"/>\n";
  }
  for (double v : {0.0, 0.5, 1.0}) {
    o << "<text x=\"" << fmt(bx + 20) << "\" y=\"" << fmt(bottom - (bottom - top) * v + 4) << "\">" << tick(v)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace nhprobe::plot
