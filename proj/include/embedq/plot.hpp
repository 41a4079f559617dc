#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <ostream>
#include <string>

#include "embedq/error.hpp"
#include "embedq/matrix.hpp"

namespace embedq {

/// Static SVG scatter of a 2-D point set, coloured by cluster id.
inline void write_svg_scatter(std::ostream& out, const DataMatrix& x, const ClusterAssignment& labels,
                              const std::string& title = "", double size = 480.0) {
  if (x.cols() != 2)
    throw Error(ErrorKind::WrongInputDimension, "scatter plots need 2 columns, got " + std::to_string(x.cols()));
  if (labels.size() != x.rows())
    throw Error(ErrorKind::RowCountMismatch, "labels do not match the point count");

  static constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  double xmin = x(0, 0), xmax = x(0, 0), ymin = x(0, 1), ymax = x(0, 1);
  for (std::size_t i = 1; i < x.rows(); ++i) {
    xmin = std::min(xmin, x(i, 0));
    xmax = std::max(xmax, x(i, 0));
    ymin = std::min(ymin, x(i, 1));
    ymax = std::max(ymax, x(i, 1));
  }
  const double margin = 20.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (size - 2 * margin) / span;

  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) out << "<title>" << title << "</title>\n";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double px = margin + (x(i, 0) - xmin) * scale;
    const double py = size - margin - (x(i, 1) - ymin) * scale;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"%s\"/>\n", px, py,
                  palette[labels[i] % palette.size()]);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace embedq
