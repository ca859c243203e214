#include "nsk/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsk/errors.hpp"

namespace nsk {

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  // Boost's stopping rule is relative to the L1 norm; asking for more than the
  // rounding floor makes it subdivide to max_depth and accumulate noise, so the
  // relative tolerance is derived from abs_tol and a one-panel L1 estimate.
  double error = 0.0, l1 = 0.0;
  double value = GK::integrate(f, a, b, 0, 0.0, &error, &l1);
  if (!(error <= 0.5 * abs_tol)) {
    const double rel = std::max(1e-13, 0.5 * abs_tol / std::max(l1, 1e-300));
    value = GK::integrate(f, a, b, /*max_depth=*/15, rel, &error);
  }
  if (!std::isfinite(value) || error > abs_tol) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] missed tolerance " << abs_tol
        << " (error estimate " << error << ")";
    throw QuadratureError(msg.str());
  }
  return value;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) throw BracketError("bisection bracket has no sign change");
  auto done = [x_tol](double a, double b) { return std::abs(b - a) <= x_tol; };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, done);
  return 0.5 * (a + b);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

AntiderivativeTable::AntiderivativeTable(std::function<double(double)> f, double origin, double lo,
                                         double hi, int intervals)
    : f_(std::move(f)), origin_(origin) {
  if (!(lo <= origin && origin <= hi && lo < hi) || intervals < 2) {
    throw std::invalid_argument("AntiderivativeTable: need lo <= origin <= hi");
  }
  // Nodes sit on origin + k h so that the table is exactly zero at the origin.
  h_ = (hi - lo) / intervals;
  const long k_lo = static_cast<long>(std::floor((lo - origin) / h_));
  const long k_hi = static_cast<long>(std::ceil((hi - origin) / h_));
  lo_ = origin + k_lo * h_;
  hi_ = origin + k_hi * h_;
  values_.reserve(k_hi - k_lo + 1);
  slopes_.reserve(k_hi - k_lo + 1);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double x = origin + k * h_;
    values_.push_back(k == 0 ? 0.0 : integrate(f_, origin, x));
    slopes_.push_back(f_(x));
  }
}

double AntiderivativeTable::operator()(double x) const {
  if (x < lo_ || x > hi_) return integrate(f_, origin_, x);
  const double pos = (x - lo_) / h_;
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= values_.size() - 1) i = values_.size() - 2;
  const double t = pos - static_cast<double>(i);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * values_[i] + h10 * h_ * slopes_[i] + h01 * values_[i + 1] + h11 * h_ * slopes_[i + 1];
}

}  // namespace nsk
