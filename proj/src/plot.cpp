#include "rbmlab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace rbmlab {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

constexpr double kWidth = 760.0, kHeight = 460.0;
constexpr double kLeft = 72.0, kRight = 600.0, kTop = 48.0, kBottom = 408.0;

struct Point {
  double step;
  double median;
  double lo;
  double hi;
};

double metric_of(const AggregateRow& row, const std::string& metric, int which) {
  const MetricAggregate* agg = nullptr;
  if (metric == "precision") {
    agg = &row.precision;
  } else if (metric == "recall") {
    agg = &row.recall;
  } else if (metric == "pcdd_literal") {
    agg = &row.pcdd_literal;
  } else if (metric == "pcdd_l2") {
    agg = &row.pcdd_l2;
  } else if (metric == "med") {
    agg = &row.med;
  } else if (metric == "top10" || metric == "top_k") {
    agg = &row.top_k;
  } else {
    throw std::invalid_argument("unknown metric: " + metric);
  }
  return which == 0 ? agg->median : (which == 1 ? agg->min : agg->max);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::string render_metric_svg(const std::vector<MetricsSeries>& series,
                              const std::string& metric) {
  if (series.empty()) throw std::invalid_argument("nothing to plot");

  // steps plot at log10(step+1) so step 0 has a finite position
  double x_max = 1.0, y_max = 0.0;
  bool fixed_unit = metric == "precision" || metric == "recall";
  std::vector<std::vector<Point>> pts(series.size());
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].aggregates.empty()) {
      throw std::invalid_argument("series has no aggregates: " + series[s].label);
    }
    for (const AggregateRow& row : series[s].aggregates) {
      const double med = metric_of(row, metric, 0);
      const double lo = metric_of(row, metric, 1);
      const double hi = metric_of(row, metric, 2);
      if (std::isnan(med) || std::isnan(lo) || std::isnan(hi)) continue;
      pts[s].push_back({static_cast<double>(row.step), med, lo, hi});
      x_max = std::max(x_max, std::log10(static_cast<double>(row.step) + 1.0));
      y_max = std::max(y_max, hi);
    }
  }
  if (fixed_unit) y_max = 1.0;
  if (y_max <= 0.0) y_max = 1.0;

  const auto sx = [&](double step) {
    return kLeft + (std::log10(step + 1.0) / x_max) * (kRight - kLeft);
  };
  const auto sy = [&](double v) {
    return kBottom - (v / y_max) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
         fmt(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt((kLeft + kRight) / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         metric + "</text>\n";

  // axes
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
         fmt(kRight) + "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"black\"/>\n";

  for (double step = 0.0, decade = 1.0; std::log10(step + 1.0) <= x_max + 1e-9;
       step = decade, decade *= 10.0) {
    const double x = sx(step);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(kBottom + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(step) + "</text>\n";
  }
  svg += "<text x=\"" + fmt((kLeft + kRight) / 2) + "\" y=\"" + fmt(kBottom + 40) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">full "
         "Gibbs updates</text>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double v = y_max * tick / 5.0;
    const double y = sy(v);
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 9) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(v) + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    if (pts[s].empty()) continue;
    const char* color = kPalette[s % kPaletteSize];

    std::string band = "<polygon fill=\"" + std::string(color) +
                       "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
    for (const Point& p : pts[s]) band += fmt(sx(p.step)) + "," + fmt(sy(p.hi)) + " ";
    for (auto it = pts[s].rbegin(); it != pts[s].rend(); ++it) {
      band += fmt(sx(it->step)) + "," + fmt(sy(it->lo)) + " ";
    }
    band += "\"/>\n";
    svg += band;

    std::string line = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                       "\" stroke-width=\"1.8\" points=\"";
    for (const Point& p : pts[s]) line += fmt(sx(p.step)) + "," + fmt(sy(p.median)) + " ";
    line += "\"/>\n";
    svg += line;

    const double ly = kTop + 18.0 * static_cast<double>(s);
    svg += "<rect x=\"" + fmt(kRight + 12) + "\" y=\"" + fmt(ly - 9) +
           "\" width=\"14\" height=\"10\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + fmt(kRight + 31) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + series[s].label +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void plot_series(const std::vector<MetricsSeries>& series, const std::string& out_dir) {
  if (series.empty()) throw std::invalid_argument("nothing to plot");
  std::filesystem::create_directories(out_dir);
  for (const char* metric :
       {"precision", "recall", "pcdd_literal", "pcdd_l2", "med", "top10"}) {
    const std::string svg = render_metric_svg(series, metric);
    const auto path = std::filesystem::path(out_dir) / (std::string(metric) + ".svg");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << svg;
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace rbmlab
