#include "nsk/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsk/errors.hpp"

namespace nsk {

namespace {

// Roots of z^2 + b z + c with real b, c, ordered (lower, upper).
std::array<Complex, 2> monic_quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    // Avoid cancellation: q = -(b + sign(b) sqrt(disc)) / 2, roots q and c / q.
    const double root = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(root, b));
    double r1 = q, r2 = q != 0.0 ? c / q : 0.0;
    if (r1 > r2) std::swap(r1, r2);
    return {Complex(r1, 0.0), Complex(r2, 0.0)};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {Complex(-0.5 * b, -im), Complex(-0.5 * b, im)};
}

}  // namespace

EndState interior_end(const ShockData& shock) {
  return shock.family == ShockFamily::Lax1Backward ? EndState::Minus : EndState::Plus;
}

EndState saddle_end(const ShockData& shock) {
  return shock.family == ShockFamily::Lax1Backward ? EndState::Plus : EndState::Minus;
}

void classify_linearization(EquilibriumReport& r, double b, double c) {
  r.discriminant = b * b - 4.0 * c;
  r.full_eigs = monic_quadratic_roots(b, c);
  r.aux_eigs = monic_quadratic_roots(0.0, c);
  const double scale = 1.0 + std::abs(b) + std::abs(c);
  r.eigen_residual = 0.0;
  for (int i = 0; i < 2; ++i) {
    r.full_eigvecs[i] = {Complex(1.0), r.full_eigs[i]};
    r.aux_eigvecs[i] = {Complex(1.0), r.aux_eigs[i]};
    const Complex lf = r.full_eigs[i], la = r.aux_eigs[i];
    r.eigen_residual = std::max({r.eigen_residual, std::abs(lf * lf + b * lf + c) / scale,
                                 std::abs(la * la + c) / scale});
  }
  r.borderline = false;
  if (c < 0.0) {
    r.class_full = FullClass::Saddle;
    r.class_aux = AuxClass::Saddle;
    const double ls = r.full_eigs[0].real(), lu = r.full_eigs[1].real();
    const double as = r.aux_eigs[0].real(), au = r.aux_eigs[1].real();
    if (b < 0.0) {
      // lambda_u > Lambda_u > 0 > lambda_s > Lambda_s
      r.interlacing_margin = std::min({lu - au, au, -ls, ls - as});
    } else {
      // Lambda_u > lambda_u > 0 > Lambda_s > lambda_s
      r.interlacing_margin = std::min({au - lu, lu, -as, as - ls});
    }
    r.interlacing_certified = r.interlacing_margin > 0.0;
  } else {
    r.class_aux = AuxClass::Centre;
    r.interlacing_margin = 0.0;
    r.interlacing_certified = false;
    // The full pair has real part -b/2.
    const bool unstable = b < 0.0;
    r.borderline = std::abs(r.discriminant) < kDiscriminantTieZone;
    const bool focus = !r.borderline && r.discriminant < 0.0;
    if (unstable) r.class_full = focus ? FullClass::UnstableFocus : FullClass::UnstableNode;
    else r.class_full = focus ? FullClass::StableFocus : FullClass::StableNode;
  }
}

EquilibriumReport analyze_equilibrium(const ShockData& shock, const FluidModel& model, EndState which) {
  EquilibriumReport r;
  r.which = which;
  r.v_star = which == EndState::Minus ? shock.v_minus : shock.v_plus;
  const double v = r.v_star;
  const double s = shock.speed;
  const double kappa = model.kappa(v);
  const double mu = model.mu(v);
  r.f_prime = f_prime(shock, model, v);
  if (std::abs(r.f_prime) < kDegenerateSlope) {
    std::ostringstream msg;
    msg << "degenerate rest point: |f'(" << v << ")| = " << std::abs(r.f_prime);
    throw DegenerateError(msg.str());
  }
  // lambda^2 + (s mu/(kappa V)) lambda + f'/kappa = 0; auxiliary: Lambda^2 + f'/kappa = 0.
  classify_linearization(r, s * mu / (kappa * v), r.f_prime / kappa);
  r.eta_value = eta(model, v);
  r.osc_threshold = 2.0 * v * std::sqrt(std::abs(r.f_prime)) / std::abs(s);
  return r;
}

Oscillation oscillation_criterion(const ShockData& shock, const FluidModel& model) {
  const EquilibriumReport r = analyze_equilibrium(shock, model, interior_end(shock));
  // Delta < 0 <=> eta < threshold; the tie zone counts as a node, like the classification.
  const bool oscillatory = r.eta_value > 0.0 && r.eta_value < r.osc_threshold && !r.borderline;
  return oscillatory ? Oscillation::Oscillatory : Oscillation::Monotone;
}

std::string to_string(EndState which) { return which == EndState::Minus ? "minus" : "plus"; }

std::string to_string(FullClass c) {
  switch (c) {
    case FullClass::Saddle: return "Saddle";
    case FullClass::UnstableNode: return "UnstableNode";
    case FullClass::UnstableFocus: return "UnstableFocus";
    case FullClass::StableNode: return "StableNode";
    case FullClass::StableFocus: return "StableFocus";
  }
  return "?";
}

std::string to_string(AuxClass c) { return c == AuxClass::Saddle ? "Saddle" : "Centre"; }

std::string to_string(Oscillation o) {
  return o == Oscillation::Oscillatory ? "Oscillatory" : "Monotone";
}

}  // namespace nsk
