#pragma once

#include <string>
#include <vector>

#include "rbmlab/harness.hpp"

namespace rbmlab {

// Renders one SVG per metric into out_dir (precision.svg, recall.svg, ...):
// log-scaled step axis, one median line per series with a min-max band.
// Throws std::invalid_argument on an empty series list.
void plot_series(const std::vector<MetricsSeries>& series, const std::string& out_dir);

// Single-metric renderer; metric is one of precision, recall, pcdd_literal,
// pcdd_l2, med, top_k. Returns the SVG document.
std::string render_metric_svg(const std::vector<MetricsSeries>& series,
                              const std::string& metric);

}  // namespace rbmlab
