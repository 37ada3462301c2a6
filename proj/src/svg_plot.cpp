#include "reachlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace reachlab {

namespace {

constexpr double kMarginLeft = 58;
constexpr double kMarginRight = 14;
constexpr double kMarginTop = 30;
constexpr double kMarginBottom = 44;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label,
                 double width, double height)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      width_(width),
      height_(height) {}

void SvgPlot::grow(const Vec2& p) {
  if (!has_data_) {
    x_min_ = x_max_ = p.x;
    y_min_ = y_max_ = p.y;
    has_data_ = true;
    return;
  }
  x_min_ = std::min(x_min_, p.x);
  x_max_ = std::max(x_max_, p.x);
  y_min_ = std::min(y_min_, p.y);
  y_max_ = std::max(y_max_, p.y);
}

void SvgPlot::add_line(const std::vector<Vec2>& points, const std::string& color,
                       double stroke_width, bool dashed) {
  for (const auto& p : points) grow(p);
  lines_.push_back({points, color, stroke_width, dashed});
}

void SvgPlot::add_marker(const Vec2& point, const std::string& color, double radius) {
  grow(point);
  markers_.push_back({point, color, radius});
}

void SvgPlot::add_circle_outline(const Vec2& center, double data_radius,
                                 const std::string& color) {
  grow({center.x - data_radius, center.y - data_radius});
  grow({center.x + data_radius, center.y + data_radius});
  circles_.push_back({center, data_radius, color});
}

void SvgPlot::add_legend(const std::string& label, const std::string& color) {
  legend_.emplace_back(label, color);
}

void SvgPlot::include_point(const Vec2& point) { grow(point); }

std::string SvgPlot::render() const {
  double x0 = x_min_, x1 = x_max_, y0 = y_min_, y1 = y_max_;
  if (!has_data_) {
    x0 = y0 = 0;
    x1 = y1 = 1;
  }
  if (x1 - x0 < 1e-12) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad_x = 0.04 * (x1 - x0);
  const double pad_y = 0.04 * (y1 - y0);
  x0 -= pad_x;
  x1 += pad_x;
  y0 -= pad_y;
  y1 += pad_y;

  const double plot_w = width_ - kMarginLeft - kMarginRight;
  const double plot_h = height_ - kMarginTop - kMarginBottom;
  auto sx = [&](double x) { return kMarginLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return kMarginTop + (y1 - y) / (y1 - y0) * plot_h; };

  std::ostringstream svg;
  svg << "<g>\n";
  svg << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
      << "' height='" << plot_h << "' fill='white' stroke='#555'/>\n";
  svg << "<text x='" << width_ / 2 << "' y='18' text-anchor='middle' "
      << "font-size='13' font-family='sans-serif'>" << title_ << "</text>\n";
  svg << "<text x='" << width_ / 2 << "' y='" << height_ - 8
      << "' text-anchor='middle' font-size='11' font-family='sans-serif'>"
      << x_label_ << "</text>\n";
  svg << "<text x='14' y='" << height_ / 2
      << "' text-anchor='middle' font-size='11' font-family='sans-serif' "
      << "transform='rotate(-90 14 " << height_ / 2 << ")'>" << y_label_
      << "</text>\n";
  // min/max tick labels
  svg << "<text x='" << kMarginLeft << "' y='" << height_ - kMarginBottom + 14
      << "' font-size='10' font-family='sans-serif'>" << fmt(x0) << "</text>\n";
  svg << "<text x='" << width_ - kMarginRight << "' y='"
      << height_ - kMarginBottom + 14
      << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << fmt(x1)
      << "</text>\n";
  svg << "<text x='" << kMarginLeft - 4 << "' y='" << height_ - kMarginBottom
      << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << fmt(y0)
      << "</text>\n";
  svg << "<text x='" << kMarginLeft - 4 << "' y='" << kMarginTop + 10
      << "' text-anchor='end' font-size='10' font-family='sans-serif'>" << fmt(y1)
      << "</text>\n";

  for (const auto& circle : circles_) {
    const double rx = circle.data_radius / (x1 - x0) * plot_w;
    const double ry = circle.data_radius / (y1 - y0) * plot_h;
    svg << "<ellipse cx='" << sx(circle.center.x) << "' cy='" << sy(circle.center.y)
        << "' rx='" << rx << "' ry='" << ry << "' fill='none' stroke='"
        << circle.color << "' stroke-dasharray='3,3'/>\n";
  }
  for (const auto& line : lines_) {
    svg << "<polyline fill='none' stroke='" << line.color << "' stroke-width='"
        << line.stroke_width << "'";
    if (line.dashed) svg << " stroke-dasharray='6,4'";
    svg << " points='";
    for (const auto& p : line.points) svg << sx(p.x) << "," << sy(p.y) << " ";
    svg << "'/>\n";
  }
  for (const auto& marker : markers_) {
    svg << "<circle cx='" << sx(marker.point.x) << "' cy='" << sy(marker.point.y)
        << "' r='" << marker.radius << "' fill='" << marker.color << "'/>\n";
  }
  double ly = kMarginTop + 14;
  for (const auto& [label, color] : legend_) {
    svg << "<line x1='" << kMarginLeft + 8 << "' y1='" << ly << "' x2='"
        << kMarginLeft + 30 << "' y2='" << ly << "' stroke='" << color
        << "' stroke-width='2'/>\n";
    svg << "<text x='" << kMarginLeft + 34 << "' y='" << ly + 3.5
        << "' font-size='10' font-family='sans-serif'>" << label << "</text>\n";
    ly += 14;
  }
  svg << "</g>\n";
  return svg.str();
}

std::string svg_panel_row(const std::vector<SvgPlot>& panels) {
  double total_w = 0;
  double total_h = 0;
  for (const auto& p : panels) {
    total_w += p.width();
    total_h = std::max(total_h, p.height());
  }
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << total_w
      << "' height='" << total_h << "' viewBox='0 0 " << total_w << " " << total_h
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  double x_off = 0;
  for (const auto& p : panels) {
    svg << "<g transform='translate(" << x_off << ",0)'>\n" << p.render() << "</g>\n";
    x_off += p.width();
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace reachlab
