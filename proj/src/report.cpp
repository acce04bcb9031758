#include "noiselab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "noiselab/json_io.hpp"

namespace noiselab {

std::string format_number(double x) { return Json(x).dump(); }

std::string weight_profile_csv(const WeightProfile& wp) {
  std::ostringstream out;
  out << "s,f\n";
  for (std::size_t s = 0; s < wp.f.size(); ++s)
    out << s << "," << format_number(wp.f[s]) << "\n";
  return out.str();
}

std::string pair_correlation_csv(const RMat& cor) {
  require(cor.rows() == cor.cols(), ErrorKind::DimensionMismatch,
          "pair_correlation_csv: matrix must be square");
  std::ostringstream out;
  for (Eigen::Index i = 0; i < cor.rows(); ++i) {
    for (Eigen::Index j = 0; j < cor.cols(); ++j) {
      if (j) out << ",";
      if (i != j) out << format_number(cor(i, j));
    }
    out << "\n";
  }
  return out.str();
}

std::string table_csv(const std::vector<std::string>& headers,
                      const std::vector<std::vector<double>>& columns) {
  require(headers.size() == columns.size(), ErrorKind::LengthMismatch,
          "table_csv: one header per column");
  require(!columns.empty(), ErrorKind::LengthMismatch, "table_csv: no columns");
  const std::size_t rows = columns.front().size();
  for (const auto& c : columns)
    require(c.size() == rows, ErrorKind::LengthMismatch, "table_csv: ragged columns");
  std::ostringstream out;
  for (std::size_t i = 0; i < headers.size(); ++i) out << (i ? "," : "") << headers[i];
  out << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_number(columns[c][r]);
    out << "\n";
  }
  return out.str();
}

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 64, kRight = 24, kTop = 24, kBottom = 48;

struct Scale {
  double lo = 0.0, hi = 1.0, px0 = 0.0, px1 = 1.0;
  double operator()(double v) const {
    const double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
    return px0 + t * (px1 - px0);
  }
};

void span(const std::vector<double>& vs, double& lo, double& hi) {
  for (double v : vs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
}

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\" font-family=\"sans-serif\" font-size=\"12\">\n";
}

std::string axes(const Scale& sx, const Scale& sy, const std::string& x_label,
                 const std::string& y_label) {
  std::ostringstream out;
  out << "<line x1=\"" << kLeft << "\" y1=\"" << (kHeight - kBottom) << "\" x2=\""
      << (kWidth - kRight) << "\" y2=\"" << (kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << (kHeight - kBottom) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << (kHeight - 10)
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (kTop + (kHeight - kTop - kBottom) / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << y_label << "</text>\n";
  out << "<text x=\"" << kLeft << "\" y=\"" << (kHeight - kBottom + 16)
      << "\" text-anchor=\"middle\">" << format_number(sx.lo) << "</text>\n";
  out << "<text x=\"" << (kWidth - kRight) << "\" y=\"" << (kHeight - kBottom + 16)
      << "\" text-anchor=\"end\">" << format_number(sx.hi) << "</text>\n";
  out << "<text x=\"" << (kLeft - 6) << "\" y=\"" << (kHeight - kBottom)
      << "\" text-anchor=\"end\">" << format_number(sy.lo) << "</text>\n";
  out << "<text x=\"" << (kLeft - 6) << "\" y=\"" << (kTop + 4) << "\" text-anchor=\"end\">"
      << format_number(sy.hi) << "</text>\n";
  return out.str();
}

std::string polyline(const Scale& sx, const Scale& sy, const std::vector<double>& xs,
                     const std::vector<double>& ys, bool dashed) {
  std::ostringstream out;
  out << "<polyline fill=\"none\" stroke=\"" << (dashed ? "#888" : "#1565c0")
      << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"5 3\"";
  out << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << (i ? " " : "") << format_number(sx(xs[i])) << "," << format_number(sy(ys[i]));
  out << "\"/>\n";
  return out.str();
}

}  // namespace

std::string line_chart_svg(const std::vector<double>& xs,
                           const std::vector<std::vector<double>>& series,
                           const std::string& x_label, const std::string& y_label) {
  require(!xs.empty() && !series.empty(), ErrorKind::EmptySet, "line_chart_svg: no data");
  for (const auto& ys : series)
    require(ys.size() == xs.size(), ErrorKind::LengthMismatch,
            "line_chart_svg: series length mismatch");

  double xlo = xs.front(), xhi = xs.front(), ylo = 0.0, yhi = 0.0;
  span(xs, xlo, xhi);
  ylo = yhi = series.front().front();
  for (const auto& ys : series) span(ys, ylo, yhi);
  if (yhi <= ylo) yhi = ylo + 1.0;
  if (xhi <= xlo) xhi = xlo + 1.0;
  const Scale sx{xlo, xhi, kLeft, kWidth - kRight};
  const Scale sy{ylo, yhi, kHeight - kBottom, kTop};

  std::string out = svg_header() + axes(sx, sy, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) out += polyline(sx, sy, xs, series[k], k > 0);
  return out + "</svg>\n";
}

std::string bar_chart_svg(const std::vector<double>& values, const std::vector<double>& reference,
                          const std::string& x_label, const std::string& y_label) {
  require(!values.empty(), ErrorKind::EmptySet, "bar_chart_svg: no data");
  require(reference.empty() || reference.size() == values.size(), ErrorKind::LengthMismatch,
          "bar_chart_svg: reference length mismatch");

  double ylo = 0.0, yhi = 0.0;
  span(values, ylo, yhi);
  span(reference, ylo, yhi);
  if (yhi <= ylo) yhi = ylo + 1.0;
  const double xhi = double(values.size());
  const Scale sx{0.0, xhi, kLeft, kWidth - kRight};
  const Scale sy{ylo, yhi, kHeight - kBottom, kTop};

  std::string out = svg_header() + axes(sx, sy, x_label, y_label);
  std::ostringstream bars;
  const double slot = (kWidth - kLeft - kRight) / xhi;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = sx(double(i)) + 0.15 * slot;
    const double y = sy(values[i]);
    bars << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\""
         << format_number(0.7 * slot) << "\" height=\""
         << format_number(std::max(0.0, (kHeight - kBottom) - y))
         << "\" fill=\"#1565c0\" opacity=\"0.8\"/>\n";
  }
  out += bars.str();
  if (!reference.empty()) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < reference.size(); ++i) xs.push_back(double(i) + 0.5);
    out += polyline(sx, sy, xs, reference, true);
  }
  return out + "</svg>\n";
}

}  // namespace noiselab
