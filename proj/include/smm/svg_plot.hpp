#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smm/sweep.hpp"

namespace smm {

struct PlotSeries {
  std::string name;
  std::string color;  // any SVG color, e.g. "#1f77b4"
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Standalone SVG document with axes, tick labels and one polyline per series.
void write_svg(std::ostream& out, const LinePlot& plot);

/// Color for a zero-field label: blue (M = -S) through red (M = +S).
std::string label_color(Projection m, SpinQuantum s);

/// One line per adiabatic track, colored by its zero-field dominant M_S.
LinePlot spectrum_plot(const SweepResult& result);

/// |c_M|^2 against field for the level with energy rank `level`.
LinePlot composition_plot(const SweepResult& result, std::size_t level);

}  // namespace smm
