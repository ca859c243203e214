#pragma once

#include <functional>
#include <vector>

namespace nsk {

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Throws QuadratureError when the error estimate exceeds abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

/// Bisection on a sign-changing bracket, to an absolute width of x_tol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tol = 1e-13);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Tabulated antiderivative of f on [lo, hi] anchored at `origin` (F(origin) = 0),
/// evaluated by cubic Hermite interpolation with the exact derivative f at the nodes.
/// Arguments outside the table fall back to direct quadrature.
class AntiderivativeTable {
 public:
  AntiderivativeTable(std::function<double(double)> f, double origin, double lo, double hi,
                      int intervals = 8192);

  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::function<double(double)> f_;
  double origin_;
  double lo_;
  double hi_;
  double h_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

}  // namespace nsk
