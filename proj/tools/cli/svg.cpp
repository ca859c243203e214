#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nsk::cli {

namespace {

constexpr double kMarginLeft = 70, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tick_label(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// 1, 2 or 5 times a power of ten, roughly span/6.
double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

}  // namespace

SvgPlot::SvgPlot(double width, double height, std::string title, std::string x_label, std::string y_label)
    : width_(width), height_(height), title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::set_bounds(double x_lo, double x_hi, double y_lo, double y_hi) {
  x_lo_ = x_lo;
  x_hi_ = x_hi;
  y_lo_ = y_lo;
  y_hi_ = y_hi;
  have_bounds_ = fixed_bounds_ = true;
}

void SvgPlot::include(const std::vector<std::pair<double, double>>& pts) {
  if (fixed_bounds_) return;
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    if (!have_bounds_) {
      x_lo_ = x_hi_ = x;
      y_lo_ = y_hi_ = y;
      have_bounds_ = true;
    }
    x_lo_ = std::min(x_lo_, x);
    x_hi_ = std::max(x_hi_, x);
    y_lo_ = std::min(y_lo_, y);
    y_hi_ = std::max(y_hi_, y);
  }
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                       double stroke_width, const std::string& dash) {
  include(pts);
  pending_.push_back({Pending::Line, pts, color, dash, stroke_width});
}

void SvgPlot::marker(double x, double y, const std::string& color, double radius) {
  include({{x, y}});
  pending_.push_back({Pending::Dot, {{x, y}}, color, "", radius});
}

void SvgPlot::segment(double x0, double y0, double x1, double y1, const std::string& color,
                      double stroke_width) {
  pending_.push_back({Pending::Seg, {{x0, y0}, {x1, y1}}, color, "", stroke_width});
}

void SvgPlot::legend(const std::string& text, const std::string& color) { legend_.emplace_back(text, color); }

double SvgPlot::px(double x) const {
  return kMarginLeft + (x - x_lo_) / (x_hi_ - x_lo_) * (width_ - kMarginLeft - kMarginRight);
}

double SvgPlot::py(double y) const {
  return height_ - kMarginBottom - (y - y_lo_) / (y_hi_ - y_lo_) * (height_ - kMarginTop - kMarginBottom);
}

std::string SvgPlot::render() const {
  SvgPlot self = *this;
  if (!self.have_bounds_) self.set_bounds(0, 1, 0, 1);
  if (!self.fixed_bounds_) {
    const double dx = std::max(self.x_hi_ - self.x_lo_, 1e-12), dy = std::max(self.y_hi_ - self.y_lo_, 1e-12);
    self.x_lo_ -= 0.05 * dx;
    self.x_hi_ += 0.05 * dx;
    self.y_lo_ -= 0.05 * dy;
    self.y_hi_ += 0.05 * dy;
  }
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width_, 0) + "\" height=\"" +
         fixed(height_, 0) + "\" viewBox=\"0 0 " + fixed(width_, 0) + " " + fixed(height_, 0) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(width_ / 2) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         escape(title_) + "</text>\n";

  // axes box and ticks
  const double l = kMarginLeft, r = width_ - kMarginRight, t = kMarginTop, b = height_ - kMarginBottom;
  out += "<rect x=\"" + fixed(l) + "\" y=\"" + fixed(t) + "\" width=\"" + fixed(r - l) + "\" height=\"" +
         fixed(b - t) + "\" fill=\"none\" stroke=\"black\"/>\n";
  const double xs = nice_step(self.x_hi_ - self.x_lo_), ys = nice_step(self.y_hi_ - self.y_lo_);
  for (double x = std::ceil(self.x_lo_ / xs) * xs; x <= self.x_hi_; x += xs) {
    const double X = self.px(x);
    out += "<line x1=\"" + fixed(X) + "\" y1=\"" + fixed(b) + "\" x2=\"" + fixed(X) + "\" y2=\"" + fixed(b + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed(X) + "\" y=\"" + fixed(b + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(x) + "</text>\n";
  }
  for (double y = std::ceil(self.y_lo_ / ys) * ys; y <= self.y_hi_; y += ys) {
    const double Y = self.py(y);
    out += "<line x1=\"" + fixed(l - 5) + "\" y1=\"" + fixed(Y) + "\" x2=\"" + fixed(l) + "\" y2=\"" + fixed(Y) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed(l - 8) + "\" y=\"" + fixed(Y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(y) + "</text>\n";
  }
  out += "<text x=\"" + fixed((l + r) / 2) + "\" y=\"" + fixed(height_ - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(x_label_) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fixed((t + b) / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 " + fixed((t + b) / 2) + ")\">" + escape(y_label_) + "</text>\n";

  out += "<g clip-path=\"url(#plot)\">\n";
  out += "<clipPath id=\"plot\"><rect x=\"" + fixed(l) + "\" y=\"" + fixed(t) + "\" width=\"" + fixed(r - l) +
         "\" height=\"" + fixed(b - t) + "\"/></clipPath>\n";
  for (const Pending& p : self.pending_) {
    if (p.kind == Pending::Line) {
      out += "<polyline fill=\"none\" stroke=\"" + p.color + "\" stroke-width=\"" + fixed(p.width, 2) + "\"";
      if (!p.dash.empty()) out += " stroke-dasharray=\"" + p.dash + "\"";
      out += " points=\"";
      bool first = true;
      for (const auto& [x, y] : p.pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        if (!first) out += ' ';
        out += fixed(self.px(x)) + "," + fixed(self.py(y));
        first = false;
      }
      out += "\"/>\n";
    } else if (p.kind == Pending::Dot) {
      out += "<circle cx=\"" + fixed(self.px(p.pts[0].first)) + "\" cy=\"" + fixed(self.py(p.pts[0].second)) +
             "\" r=\"" + fixed(p.width) + "\" fill=\"" + p.color + "\"/>\n";
    } else {
      out += "<line x1=\"" + fixed(self.px(p.pts[0].first)) + "\" y1=\"" + fixed(self.py(p.pts[0].second)) +
             "\" x2=\"" + fixed(self.px(p.pts[1].first)) + "\" y2=\"" + fixed(self.py(p.pts[1].second)) +
             "\" stroke=\"" + p.color + "\" stroke-width=\"" + fixed(p.width) + "\"/>\n";
    }
  }
  out += "</g>\n";
  double ly = t + 16;
  for (const auto& [text, color] : legend_) {
    out += "<line x1=\"" + fixed(r - 205) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" + fixed(r - 185) + "\" y2=\"" +
           fixed(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fixed(r - 180) + "\" y=\"" + fixed(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(text) + "</text>\n";
    ly += 16;
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::pair<double, double>> decimate(const std::vector<std::pair<double, double>>& pts,
                                                std::size_t limit) {
  if (pts.size() <= limit || limit < 2) return pts;
  std::vector<std::pair<double, double>> out;
  out.reserve(limit);
  const double stride = static_cast<double>(pts.size() - 1) / static_cast<double>(limit - 1);
  for (std::size_t k = 0; k < limit; ++k) out.push_back(pts[static_cast<std::size_t>(std::llround(k * stride))]);
  return out;
}

}  // namespace nsk::cli
