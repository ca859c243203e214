#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nsk::cli {

/// Minimal SVG line plot: data-space bounds, polylines, markers, short segments
/// and labelled axes. Coordinates are written with fixed precision so the output
/// is deterministic.
class SvgPlot {
 public:
  SvgPlot(double width, double height, std::string title, std::string x_label, std::string y_label);

  void set_bounds(double x_lo, double x_hi, double y_lo, double y_hi);
  /// Grow bounds to include the points (with 5 % padding once finalized).
  void include(const std::vector<std::pair<double, double>>& pts);

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double stroke_width = 1.5, const std::string& dash = "");
  void marker(double x, double y, const std::string& color, double radius = 3.5);
  void segment(double x0, double y0, double x1, double y1, const std::string& color, double stroke_width = 0.8);
  void legend(const std::string& text, const std::string& color);

  std::string render() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double width_, height_;
  std::string title_, x_label_, y_label_;
  double x_lo_ = 0, x_hi_ = 1, y_lo_ = 0, y_hi_ = 1;
  bool have_bounds_ = false;
  bool fixed_bounds_ = false;
  std::vector<std::pair<std::string, std::string>> legend_;
  struct Pending {
    enum Kind { Line, Dot, Seg } kind;
    std::vector<std::pair<double, double>> pts;
    std::string color, dash;
    double width;
  };
  std::vector<Pending> pending_;
};

/// Keep at most `limit` evenly spaced points (always including the last one).
std::vector<std::pair<double, double>> decimate(const std::vector<std::pair<double, double>>& pts,
                                                std::size_t limit);

}  // namespace nsk::cli
