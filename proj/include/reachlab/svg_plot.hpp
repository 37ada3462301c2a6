#pragma once

#include <string>
#include <vector>

#include "reachlab/arm_dynamics.hpp"

namespace reachlab {

// Minimal static-SVG plotter: one data panel with a frame, min/max tick
// labels, optional legend entries, polylines and markers. Data ranges grow
// automatically as elements are added.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label,
          double width = 460, double height = 360);

  void add_line(const std::vector<Vec2>& points, const std::string& color,
                double stroke_width = 1.5, bool dashed = false);
  void add_marker(const Vec2& point, const std::string& color, double radius = 3);
  void add_circle_outline(const Vec2& center, double data_radius,
                          const std::string& color);
  void add_legend(const std::string& label, const std::string& color);
  // Forces a range (e.g. equal-aspect hand-space plots).
  void include_point(const Vec2& point);

  std::string render() const;
  double width() const { return width_; }
  double height() const { return height_; }

 private:
  struct Line {
    std::vector<Vec2> points;
    std::string color;
    double stroke_width;
    bool dashed;
  };
  struct Marker {
    Vec2 point;
    std::string color;
    double radius;
  };
  struct Circle {
    Vec2 center;
    double data_radius;
    std::string color;
  };

  void grow(const Vec2& p);

  std::string title_, x_label_, y_label_;
  double width_, height_;
  std::vector<Line> lines_;
  std::vector<Marker> markers_;
  std::vector<Circle> circles_;
  std::vector<std::pair<std::string, std::string>> legend_;
  double x_min_ = 0, x_max_ = 0, y_min_ = 0, y_max_ = 0;
  bool has_data_ = false;
};

// Lays out panels left-to-right into one SVG document.
std::string svg_panel_row(const std::vector<SvgPlot>& panels);

}  // namespace reachlab
