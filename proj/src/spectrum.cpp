#include "nsk/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsk/errors.hpp"
#include "nsk/format.hpp"
#include "nsk/profile.hpp"

namespace nsk {

namespace {

double end_state(const ShockData& shock, EndState which) {
  return which == EndState::Minus ? shock.v_minus : shock.v_plus;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// value and first two y-derivatives of a scalar along the profile
struct Jet {
  double d0 = 0.0, d1 = 0.0, d2 = 0.0;
};

Jet operator-(Jet a, Jet b) { return {a.d0 - b.d0, a.d1 - b.d1, a.d2 - b.d2}; }
Jet operator*(double c, Jet a) { return {c * a.d0, c * a.d1, c * a.d2}; }
Jet operator*(Jet a, Jet b) {
  return {a.d0 * b.d0, a.d1 * b.d0 + a.d0 * b.d1, a.d2 * b.d0 + 2.0 * a.d1 * b.d1 + a.d0 * b.d2};
}
Jet reciprocal(Jet a) {
  const double r = 1.0 / a.d0;
  return {r, -a.d1 * r * r, -a.d2 * r * r + 2.0 * a.d1 * a.d1 * r * r * r};
}
// phi(x(y)) given phi, phi', phi'' at x
Jet compose(double phi0, double phi1, double phi2, Jet x) {
  return {phi0, phi1 * x.d1, phi2 * x.d1 * x.d1 + phi1 * x.d2};
}
Jet compose(const FluidModel& model, Quantity which, int order, Jet x) {
  return compose(model.eval(which, order, x.d0), model.eval(which, order + 1, x.d0),
                 model.eval(which, order + 2, x.d0), x);
}

}  // namespace

DispersionPair dispersion_roots(const ShockData& shock, const FluidModel& model, EndState which,
                                double xi) {
  const double v = end_state(shock, which);
  const double s = shock.speed, mu = model.mu(v), kappa = model.kappa(v), pp = model.p(v, 1);
  const Complex I(0.0, 1.0);
  const Complex B = xi * xi * mu / v - 2.0 * I * xi * s;
  const Complex C = -(s * s + pp) * xi * xi - (s * mu / v) * I * xi * xi * xi + kappa * xi * xi * xi * xi;
  Complex disc = B * B - 4.0 * C;
  // The discriminant is real in exact arithmetic; drop the rounding residue so the
  // principal branch is chosen deterministically.
  const double scale = std::norm(B) + 4.0 * std::abs(C);
  if (std::abs(disc.imag()) <= 1e-12 * scale) disc.imag(0.0);
  const Complex root = std::sqrt(disc);
  DispersionPair out;
  out.delta_tilde = disc.real();
  out.l1 = 0.5 * (-B + root);
  out.l2 = 0.5 * (-B - root);
  if (disc.imag() == 0.0 && disc.real() > 0.0) {
    // Re l1 = -a + r with a = xi^2 mu/(2V), r = sqrt(disc)/2 cancels; use (r^2 - a^2)/(r + a).
    const double a = 0.5 * xi * xi * mu / v, r = 0.5 * root.real();
    out.l1.real((pp * xi * xi - kappa * xi * xi * xi * xi) / (r + a));
  }
  return out;
}

DispersionPair dispersion_closed_form(const ShockData& shock, const FluidModel& model,
                                      EndState which, double xi) {
  const double v = end_state(shock, which);
  const double s = shock.speed, mu = model.mu(v), kappa = model.kappa(v), pp = model.p(v, 1);
  const double x2 = xi * xi, x4 = x2 * x2;
  DispersionPair out;
  out.delta_tilde = x4 * mu * mu / (v * v) + 4.0 * pp * x2 - 4.0 * kappa * x4;
  const Complex centre(-0.5 * x2 * mu / v, xi * s);
  const Complex half = 0.5 * std::sqrt(Complex(out.delta_tilde, 0.0));
  out.l1 = centre + half;
  out.l2 = centre - half;
  return out;
}

double dispersion_residual(const ShockData& shock, const FluidModel& model, EndState which,
                           double xi, Complex lambda) {
  const double v = end_state(shock, which);
  const double s = shock.speed, mu = model.mu(v), kappa = model.kappa(v), pp = model.p(v, 1);
  const Complex I(0.0, 1.0);
  const Complex terms[] = {lambda * lambda, (xi * xi * mu / v) * lambda, -2.0 * I * xi * s * lambda,
                           Complex(-(s * s + pp) * xi * xi), -(s * mu / v) * I * xi * xi * xi,
                           Complex(kappa * xi * xi * xi * xi)};
  Complex sum = 0.0;
  double mag = 0.0;
  for (const Complex& t : terms) {
    sum += t;
    mag += std::abs(t);
  }
  return mag > 0.0 ? std::abs(sum) / mag : std::abs(sum);
}

SpectrumReport fredholm_borders(const ShockData& shock, const FluidModel& model, double lo, double hi,
                                int n) {
  if (n < 2 || !(lo < hi)) throw std::invalid_argument("fredholm_borders needs n >= 2 and lo < hi");
  SpectrumReport rep;
  rep.xi_grid.resize(n);
  for (int e = 0; e < 2; ++e) {
    rep.delta_tilde[e].resize(n);
    for (int b = 0; b < 2; ++b) rep.curves[e][b].resize(n);
  }
  rep.max_re = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double xi = lo + (hi - lo) * k / (n - 1);
    rep.xi_grid[k] = xi;
    for (int e = 0; e < 2; ++e) {
      const DispersionPair d = dispersion_roots(shock, model, e == 0 ? EndState::Minus : EndState::Plus, xi);
      rep.curves[e][0][k] = d.l1;
      rep.curves[e][1][k] = d.l2;
      rep.delta_tilde[e][k] = d.delta_tilde;
      rep.max_re = std::max({rep.max_re, d.l1.real(), d.l2.real()});
    }
  }
  rep.m_value = point_condition_m(model, shock.v_minus);
  rep.power_law_check = power_law_check(model, shock.v_minus);
  return rep;
}

std::array<Complex, 5> quartic_coeffs(const ShockData& shock, const FluidModel& model, EndState which,
                                      Complex lambda) {
  const double v = end_state(shock, which);
  const double s = shock.speed, mu = model.mu(v), kappa = model.kappa(v), pp = model.p(v, 1);
  const Complex alpha = lambda * mu / (v * kappa) - (s * s + pp) / kappa;
  return {Complex(1.0), Complex(s * mu / (v * kappa)), -alpha, -2.0 * lambda * s / kappa,
          lambda * lambda / kappa};
}

std::array<Complex, 4> quartic_roots(const std::array<Complex, 5>& a) {
  // Companion matrix of the monic polynomial theta^4 + c3 theta^3 + ... + c0.
  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -a[4 - i] / a[0];
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion, /*computeEigenvectors=*/false);
  std::array<Complex, 4> roots;
  for (int i = 0; i < 4; ++i) roots[i] = solver.eigenvalues()[i];
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return roots;
}

Splitting consistent_splitting(const ShockData& shock, const FluidModel& model, EndState which,
                               double lambda_probe) {
  if (!(lambda_probe > 0.0)) throw std::invalid_argument("lambda_probe must be positive");
  const auto a = quartic_coeffs(shock, model, which, Complex(lambda_probe));
  Splitting out;
  out.roots = quartic_roots(a);
  for (const Complex& th : out.roots) {
    Complex sum = 0.0, pw = 1.0;
    double mag = 0.0;
    for (int k = 4; k >= 0; --k) {
      sum += a[k] * pw;
      mag += std::abs(a[k] * pw);
      pw *= th;
    }
    out.max_residual = std::max(out.max_residual, std::abs(sum) / mag);
    if (th.real() < -kCenterDeadZone) ++out.n_stable;
    else if (th.real() > kCenterDeadZone) ++out.n_unstable;
    else ++out.n_center;
  }
  for (int k = 0; k < 5; ++k) out.sign_pattern[k] = sign_of(a[k].real());
  const std::array<int, 5> expected = shock.family == ShockFamily::Lax1Backward
                                          ? std::array<int, 5>{1, -1, -1, 1, 1}
                                          : std::array<int, 5>{1, 1, -1, -1, 1};
  out.sign_pattern_ok = out.sign_pattern == expected;
  if (out.n_center > 0) {
    std::ostringstream msg;
    msg << "quartic at " << to_string(which) << " state, lambda = " << lambda_probe << " has "
        << out.n_center << " root(s) with |Re| < " << kCenterDeadZone << "; roots:";
    for (const Complex& th : out.roots) msg << " (" << th.real() << ", " << th.imag() << ")";
    throw CenterRootError(msg.str());
  }
  return out;
}

double point_condition_m(const FluidModel& model, double v_minus) {
  return -model.kappa(v_minus, 1) * model.p(v_minus, 1) + model.kappa(v_minus) * model.p(v_minus, 2);
}

std::optional<PowerLawCheck> power_law_check(const FluidModel& model, double v_minus) {
  if (model.frame() != Frame::Lagrangian) return std::nullopt;
  const auto* p = std::get_if<PowerLaw>(&model.potential(Quantity::Pressure));
  const auto* k = std::get_if<PowerLaw>(&model.potential(Quantity::Capillarity));
  if (!p || !k) return std::nullopt;
  PowerLawCheck out;
  out.gamma = -p->exponent;
  out.beta = -k->exponent - 5.0;
  out.closed_form = p->coefficient * k->coefficient * out.gamma * (out.gamma - out.beta - 4.0) *
                    std::pow(v_minus, -out.gamma - out.beta - 7.0);
  const double m = point_condition_m(model, v_minus);
  out.relative_error = out.closed_form != 0.0 ? std::abs(m - out.closed_form) / std::abs(out.closed_form)
                                              : std::abs(m);
  out.passes = sign_of(m) == sign_of(out.gamma - out.beta - 4.0) && out.relative_error <= 1e-10;
  return out;
}

EnergyDiagnostics energy_diagnostics(const ProfileSolution& solution, const ShockData& shock,
                                     const FluidModel& model) {
  const double s = shock.speed;
  const std::size_t n = solution.size();
  EnergyDiagnostics out;
  out.f1.resize(n);
  out.f2.resize(n);
  out.f3.resize(n);
  double max_d1 = 0.0;
  for (double q : solution.q_samples) max_d1 = std::max(max_d1, std::abs(q));
  const double resolved = 1e-3 * max_d1;
  bool have_ratio = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = solution.v_samples[i];
    const ProfileDerivatives d = profile_derivatives(shock, model, v, solution.q_samples[i]);
    const Jet V{v, d.d1, d.d2};
    const Jet Q{d.d1, d.d2, d.d3};
    const Jet inv_v = reciprocal(V);
    const Jet mu = compose(model, Quantity::Viscosity, 0, V);
    const Jet mu1 = compose(model, Quantity::Viscosity, 1, V);
    const Jet p1 = compose(model, Quantity::Pressure, 1, V);
    const Jet kappa = compose(model, Quantity::Capillarity, 0, V);
    // U' = -s V'
    const Jet f1 = (mu1 * V - mu) * inv_v * inv_v * (-s * Q) - p1;
    const Jet inv_f1 = reciprocal(f1);
    const Jet first = (0.5 * s) * inv_f1;
    const Jet second = 0.5 * (mu * inv_v * inv_f1);
    const Jet third = kappa * inv_f1;
    out.f1[i] = f1.d0;
    out.f2[i] = first.d1 - second.d2;
    out.f3[i] = 0.5 * s * third.d1;
    if (out.f2[i] < 0.0) ++out.negative_f2;
    if (out.f3[i] < 0.0) ++out.negative_f3;
    const double a = std::abs(d.d1);
    if (a > resolved && a > 0.0) {
      const double r2 = out.f2[i] / a, r3 = out.f3[i] / a;
      if (!have_ratio) {
        out.min_f2_ratio = out.max_f2_ratio = r2;
        out.min_f3_ratio = out.max_f3_ratio = r3;
        have_ratio = true;
      }
      out.min_f2_ratio = std::min(out.min_f2_ratio, r2);
      out.max_f2_ratio = std::max(out.max_f2_ratio, r2);
      out.min_f3_ratio = std::min(out.min_f3_ratio, r3);
      out.max_f3_ratio = std::max(out.max_f3_ratio, r3);
    }
  }
  if (n > 0) {
    out.min_f1 = *std::min_element(out.f1.begin(), out.f1.end());
    out.max_f1 = *std::max_element(out.f1.begin(), out.f1.end());
  }
  if (n > 0 && out.min_f1 < 1e-8) {
    std::ostringstream msg;
    msg << "energy_diagnostics: min f1 = " << out.min_f1 << " below 1e-8";
    throw SmallDenominatorError(msg.str());
  }
  return out;
}

std::string spectrum_csv(const SpectrumReport& report) {
  std::string out =
      "xi,re_l1_minus,im_l1_minus,re_l2_minus,im_l2_minus,re_l1_plus,im_l1_plus,re_l2_plus,im_l2_plus\n";
  for (std::size_t k = 0; k < report.xi_grid.size(); ++k) {
    append_number(out, report.xi_grid[k]);
    for (int e = 0; e < 2; ++e) {
      for (int b = 0; b < 2; ++b) {
        out += ',';
        append_number(out, report.curves[e][b][k].real());
        out += ',';
        append_number(out, report.curves[e][b][k].imag());
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace nsk
