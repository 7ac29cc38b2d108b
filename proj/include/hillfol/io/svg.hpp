#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace hillfol {

struct Segment {
  double x0, y0, x1, y1;
};

/// Grid of samples over [xmin, xmax] x [ymin, ymax]; NaN marks excluded points.
struct ScalarGrid {
  double xmin, xmax, ymin, ymax;
  int nx, ny;
  std::vector<double> v;  // row-major, y index outer

  double x(int i) const { return xmin + (xmax - xmin) * i / (nx - 1); }
  double y(int j) const { return ymin + (ymax - ymin) * j / (ny - 1); }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }

  /// `count` levels spread over the 5%..95% quantiles of the finite values.
  std::vector<double> quantile_levels(int count) const {
    std::vector<double> f;
    for (double s : v)
      if (std::isfinite(s)) f.push_back(s);
    if (f.empty() || count < 1) return {};
    std::sort(f.begin(), f.end());
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
      double q = 0.05 + 0.9 * (count == 1 ? 0.5 : static_cast<double>(k) / (count - 1));
      out.push_back(f[static_cast<std::size_t>(q * (f.size() - 1))]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Marching squares; cells touching a NaN sample are skipped.
inline std::vector<Segment> contour(const ScalarGrid& g, double level) {
  std::vector<Segment> out;
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      double c[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
      double px[4] = {g.x(i), g.x(i + 1), g.x(i + 1), g.x(i)};
      double py[4] = {g.y(j), g.y(j), g.y(j + 1), g.y(j + 1)};
      if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2]) || !std::isfinite(c[3])) continue;
      std::vector<std::pair<double, double>> hits;
      for (int e = 0; e < 4; ++e) {
        int a = e, b = (e + 1) % 4;
        bool sa = c[a] >= level, sb = c[b] >= level;
        if (sa == sb) continue;
        double t = (level - c[a]) / (c[b] - c[a]);
        hits.push_back({px[a] + t * (px[b] - px[a]), py[a] + t * (py[b] - py[a])});
      }
      for (std::size_t k = 0; k + 1 < hits.size(); k += 2)
        out.push_back({hits[k].first, hits[k].second, hits[k + 1].first, hits[k + 1].second});
    }
  return out;
}

class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax, int size = 600)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), size_(size) {}

  void line(const Segment& s, const std::string& color, double width = 1.0) {
    body_ += "<line x1=\"" + num(sx(s.x0)) + "\" y1=\"" + num(sy(s.y0)) + "\" x2=\"" + num(sx(s.x1)) + "\" y2=\"" +
             num(sy(s.y1)) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width = 1.5) {
    if (pts.empty()) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\" points=\"";
    for (const auto& [x, y] : pts) body_ += num(sx(x)) + "," + num(sy(y)) + " ";
    body_ += "\"/>\n";
  }

  void text(double x, double y, const std::string& s) {
    body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"12\">" + s + "</text>\n";
  }

  std::string str() const {
    int full = size_ + 2 * margin;
    std::string head = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(full) + "\" height=\"" +
                       std::to_string(full) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    head += "<rect x=\"" + std::to_string(margin) + "\" y=\"" + std::to_string(margin) + "\" width=\"" +
            std::to_string(size_) + "\" height=\"" + std::to_string(size_) + "\" fill=\"none\" stroke=\"black\"/>\n";
    head += "<text x=\"" + std::to_string(margin) + "\" y=\"" + std::to_string(full - 8) +
            "\" font-family=\"monospace\" font-size=\"11\">x: [" + num(xmin_) + ", " + num(xmax_) + "]  y: [" +
            num(ymin_) + ", " + num(ymax_) + "]</text>\n";
    return head + body_ + "</svg>\n";
  }

  /// HSL-ish blue-to-red ramp, t in [0, 1].
  static std::string ramp(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r = static_cast<int>(40 + 200 * t), b = static_cast<int>(220 - 180 * t), g = 60;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
  }

 private:
  static constexpr int margin = 30;
  double sx(double x) const { return margin + (x - xmin_) / (xmax_ - xmin_) * size_; }
  double sy(double y) const { return margin + (ymax_ - y) / (ymax_ - ymin_) * size_; }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  double xmin_, xmax_, ymin_, ymax_;
  int size_;
  std::string body_;
};

}  // namespace hillfol
