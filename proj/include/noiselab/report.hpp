#pragma once

// Plain-text report artifacts: CSV tables and deliberately minimal static
// SVG charts (bars and polylines with axis labels). All numbers are printed
// in shortest round-trip form so emitted bytes are a pure function of the
// values.

#include <string>
#include <vector>

#include "noiselab/common.hpp"
#include "noiselab/syndrome.hpp"

namespace noiselab {

// Shortest round-trip decimal form of x (the one JSON emission uses).
std::string format_number(double x);

// Weight profile as "s,f" with one row per weight 0..n.
std::string weight_profile_csv(const WeightProfile& wp);

// Symmetric pair-correlation matrix as an n x n CSV; diagonal cells empty.
std::string pair_correlation_csv(const RMat& cor);

// Generic table: one header row, then columns zipped row-wise. All columns
// must share one length.
std::string table_csv(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns);  // LengthMismatch

// Polyline chart of ys against xs with axis labels. Multiple series share
// the axes; series beyond the first are dash-stroked.
std::string line_chart_svg(const std::vector<double>& xs,
                           const std::vector<std::vector<double>>& series,
                           const std::string& x_label, const std::string& y_label);

// Bar chart over integer x = 0..values-1, with an optional reference
// polyline sharing the axes.
std::string bar_chart_svg(const std::vector<double>& values,
                          const std::vector<double>& reference,
                          const std::string& x_label, const std::string& y_label);

}  // namespace noiselab
