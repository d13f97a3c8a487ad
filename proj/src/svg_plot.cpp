#include "smm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "smm/analysis.hpp"

namespace smm {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

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

// Roughly five round tick values spanning [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return out;
}

}  // namespace

void write_svg(std::ostream& out, const LinePlot& plot) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : plot.series) {
    for (double v : s.x) x_lo = std::min(x_lo, v), x_hi = std::max(x_hi, v);
    for (double v : s.y) y_lo = std::min(y_lo, v), y_hi = std::max(y_hi, v);
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double pad = 0.03 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(plot.title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : ticks(x_lo, x_hi)) {
    out << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx(t))
        << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << tick(t) << "</text>\n";
  }
  for (double t : ticks(y_lo, y_hi)) {
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << num(sy(t)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(t) + 4)
        << "\" text-anchor=\"end\">" << tick(t) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n"
      << "<text transform=\"translate(20," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n"
      << "</g>\n";

  out << "<g fill=\"none\" stroke-width=\"1.2\">\n";
  for (const auto& s : plot.series) {
    out << "<polyline stroke=\"" << s.color << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      out << (i ? " " : "") << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
    }
    out << "\"><title>" << escape(s.name) << "</title></polyline>\n";
  }
  out << "</g>\n";

  // Legend: one entry per distinct name, in series order.
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  std::vector<std::string> seen;
  double ly = kTop + 10;
  for (const auto& s : plot.series) {
    if (std::find(seen.begin(), seen.end(), s.name) != seen.end()) continue;
    seen.push_back(s.name);
    if (ly > kTop + ph) break;
    const double lx = kLeft + pw + 15;
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name)
        << "</text>\n";
    ly += 16;
  }
  out << "</g>\n</svg>\n";
}

std::string label_color(Projection m, SpinQuantum s) {
  const double t = s.twice() == 0 ? 0.5 : (m.value() + s.value()) / (2.0 * s.value());
  const double hue = 240.0 * (1.0 - std::clamp(t, 0.0, 1.0));  // blue -> red
  // HSV(hue, 0.85, 0.85) to RGB.
  const double c = 0.85 * 0.85;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) r = c, g = x;
  else if (hp < 2) r = x, g = c;
  else if (hp < 3) g = c, b = x;
  else if (hp < 4) g = x, b = c;
  else r = x, b = c;
  const double mn = 0.85 - c;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + mn) * 255)),
                static_cast<int>(std::lround((g + mn) * 255)),
                static_cast<int>(std::lround((b + mn) * 255)));
  return buf;
}

LinePlot spectrum_plot(const SweepResult& result) {
  LinePlot plot;
  plot.title = "Energy levels vs field";
  plot.x_label = "B (T)";
  plot.y_label = "E (K)";
  const SpinQuantum s = result.system.s;
  for (std::size_t t = 0; t < result.track_count(); ++t) {
    PlotSeries series;
    series.name = "M = " + to_string(result.track_labels[t]);
    series.color = label_color(result.track_labels[t], s);
    series.x = result.fields;
    for (std::size_t k = 0; k < result.points.size(); ++k) {
      series.y.push_back(result.track_energy(t, k));
    }
    plot.series.push_back(std::move(series));
  }
  return plot;
}

LinePlot composition_plot(const SweepResult& result, std::size_t level) {
  LinePlot plot;
  plot.title = "Projection probabilities of level " + std::to_string(level);
  plot.x_label = "B (T)";
  plot.y_label = "|c_M|^2";
  const SpinQuantum s = result.system.s;
  std::vector<PlotSeries> series(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    series[i].name = "M = " + to_string(projection_at(s, i));
    series[i].color = label_color(projection_at(s, i), s);
    series[i].x = result.fields;
  }
  for (const auto& point : result.points) {
    const ComplexVector v = point.vector(level);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      series[i].y.push_back(std::norm(v(static_cast<Eigen::Index>(i))));
    }
  }
  plot.series = std::move(series);
  return plot;
}

}  // namespace smm
