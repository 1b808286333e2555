#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fracdev::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range padded(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 1.0};
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double lo = *mn;
  double hi = *mx;
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string svg_plot(const Series& points, std::optional<Line> fit, const std::string& title,
                     const std::string& x_label, const std::string& y_label) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < std::min(points.x.size(), points.y.size()); ++i) {
    if (std::isfinite(points.x[i]) && std::isfinite(points.y[i])) {
      xs.push_back(points.x[i]);
      ys.push_back(points.y[i]);
    }
  }
  const Range rx = padded(xs);
  const Range ry = padded(ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  const auto py = [&](double y) { return kTop + (ry.hi - y) / (ry.hi - ry.lo) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
    << "</text>\n";
  s << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\""
    << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double y = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    s << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">"
      << fmt(x, "%.3g") << "</text>\n";
    s << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(y) + 4) << "\" text-anchor=\"end\">"
      << fmt(y, "%.3g") << "</text>\n";
  }
  s << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 12) << "\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << fmt(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n";
  if (fit) {
    const double y0 = fit->intercept + fit->slope * rx.lo;
    const double y1 = fit->intercept + fit->slope * rx.hi;
    s << "<line x1=\"" << fmt(px(rx.lo)) << "\" y1=\"" << fmt(py(y0)) << "\" x2=\"" << fmt(px(rx.hi))
      << "\" y2=\"" << fmt(py(y1)) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(ys[i])) << "\" r=\"3.5\" fill=\"#2c3e50\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace fracdev::cli
