#include "nsk/fluid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsk/errors.hpp"

namespace nsk {

double PowerLaw::derivative(int order, double v) const {
  if (order < 0) throw OrderError("negative derivative order");
  double factor = coefficient;
  for (int k = 0; k < order; ++k) factor *= (exponent - k);
  if (factor == 0.0) return 0.0;
  return factor * std::pow(v, exponent - order);
}

int max_order(const Potential& potential) {
  if (std::holds_alternative<PowerLaw>(potential)) return kMaxDerivativeOrder;
  const auto& table = std::get<TabulatedCallable>(potential);
  return static_cast<int>(table.derivatives.size()) - 1;
}

double evaluate(const Potential& potential, int order, double x) {
  if (order < 0 || order > max_order(potential)) {
    std::ostringstream msg;
    msg << "derivative order " << order << " not supported (max " << max_order(potential) << ")";
    throw OrderError(msg.str());
  }
  if (const auto* law = std::get_if<PowerLaw>(&potential)) return law->derivative(order, x);
  return std::get<TabulatedCallable>(potential).derivatives[order](x);
}

FluidModel::FluidModel(Potential pressure, Potential viscosity, Potential capillarity,
                       Frame frame, double v_min)
    : pressure_(std::move(pressure)),
      viscosity_(std::move(viscosity)),
      capillarity_(std::move(capillarity)),
      frame_(frame),
      v_min_(v_min) {
  if (!(v_min_ > 0.0)) throw std::invalid_argument("v_min must be positive");
  for (const Potential* pot : {&pressure_, &viscosity_, &capillarity_}) {
    if (const auto* law = std::get_if<PowerLaw>(pot)) {
      if (!(law->coefficient > 0.0)) throw std::invalid_argument("power-law coefficient must be positive");
    } else if (std::get<TabulatedCallable>(*pot).derivatives.empty()) {
      throw std::invalid_argument("callable potential needs at least a value callback");
    }
  }
  // Power-law pressures can be checked globally: p' < 0 < p'' needs a negative
  // exponent (Lagrangian); p', p'' > 0 needs an exponent above one (Eulerian).
  if (const auto* law = std::get_if<PowerLaw>(&pressure_)) {
    const bool ok = frame_ == Frame::Lagrangian ? law->exponent < 0.0 : law->exponent > 1.0;
    if (!ok) {
      throw std::invalid_argument(frame_ == Frame::Lagrangian
                                      ? "Lagrangian power-law pressure needs a negative exponent"
                                      : "Eulerian power-law pressure needs an exponent > 1");
    }
  }
}

const Potential& FluidModel::potential(Quantity which) const {
  switch (which) {
    case Quantity::Pressure: return pressure_;
    case Quantity::Viscosity: return viscosity_;
    case Quantity::Capillarity: return capillarity_;
  }
  throw std::logic_error("unknown quantity");
}

double FluidModel::eval(Quantity which, int order, double v) const {
  if (!(v >= v_min_)) {
    std::ostringstream msg;
    msg << to_string(which) << " evaluated at " << v << " below v_min = " << v_min_;
    throw DomainError(msg.str());
  }
  return evaluate(potential(which), order, v);
}

void FluidModel::check_assumptions(double lo, double hi, int samples) const {
  const double sign = frame_ == Frame::Lagrangian ? -1.0 : 1.0;
  for (int i = 0; i < samples; ++i) {
    const double v = lo + (hi - lo) * i / std::max(samples - 1, 1);
    std::ostringstream msg;
    if (!(mu(v) > 0.0)) msg << "viscosity not positive at " << v;
    else if (!(kappa(v) > 0.0)) msg << "capillarity not positive at " << v;
    else if (!(sign * p(v, 1) > 0.0)) msg << "pressure derivative has the wrong sign at " << v;
    else if (!(p(v, 2) > 0.0)) msg << "pressure not strictly convex at " << v;
    else continue;
    throw DomainError(msg.str());
  }
}

double eval(const FluidModel& model, Quantity which, int order, double v) {
  return model.eval(which, order, v);
}

double eta(const FluidModel& model, double v) {
  return model.mu(v) / std::sqrt(model.kappa(v));
}

namespace {

// g(x) = h(1/x) * x^extra, derivatives up to order 3 by the chain and product rules.
// The frame map is an involution of this form: extra = 0 for p and mu, -5 for kappa.
Potential reciprocal_transform(const Potential& h, double extra) {
  if (const auto* law = std::get_if<PowerLaw>(&h)) {
    return PowerLaw{law->coefficient, -law->exponent + extra};
  }
  const int order = std::min(max_order(h), kMaxDerivativeOrder);
  TabulatedCallable out;
  for (int k = 0; k <= order; ++k) {
    out.derivatives.emplace_back([h, extra, k](double x) {
      const double w = 1.0 / x;
      const double w1 = -w * w, w2 = 2.0 * w * w * w, w3 = -6.0 * w * w * w * w;
      const int avail = max_order(h);
      const double h0 = evaluate(h, 0, w);
      const double h1 = avail >= 1 ? evaluate(h, 1, w) : 0.0;
      const double h2 = avail >= 2 ? evaluate(h, 2, w) : 0.0;
      const double h3 = avail >= 3 ? evaluate(h, 3, w) : 0.0;
      const double c[4] = {h0, h1 * w1, h2 * w1 * w1 + h1 * w2,
                           h3 * w1 * w1 * w1 + 3.0 * h2 * w1 * w2 + h1 * w3};
      const PowerLaw weight{1.0, extra};
      static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
      double sum = 0.0;
      for (int j = 0; j <= k; ++j) sum += binom[k][j] * c[j] * weight.derivative(k - j, x);
      return sum;
    });
  }
  return out;
}

FluidModel transform(const FluidModel& model, Frame target) {
  return FluidModel(reciprocal_transform(model.potential(Quantity::Pressure), 0.0),
                    reciprocal_transform(model.potential(Quantity::Viscosity), 0.0),
                    reciprocal_transform(model.potential(Quantity::Capillarity), -5.0), target,
                    model.v_min());
}

}  // namespace

FluidModel to_lagrangian(const FluidModel& eulerian_model) {
  if (eulerian_model.frame() != Frame::Eulerian) throw FrameError("to_lagrangian needs an Eulerian model");
  return transform(eulerian_model, Frame::Lagrangian);
}

FluidModel to_eulerian(const FluidModel& lagrangian_model) {
  if (lagrangian_model.frame() != Frame::Lagrangian) throw FrameError("to_eulerian needs a Lagrangian model");
  return transform(lagrangian_model, Frame::Eulerian);
}

FluidModel power_law_model(PowerLaw pressure, PowerLaw viscosity, PowerLaw capillarity, Frame frame,
                           double v_min) {
  return FluidModel(pressure, viscosity, capillarity, frame, v_min);
}

std::string to_string(Frame frame) {
  return frame == Frame::Lagrangian ? "lagrangian" : "eulerian";
}

std::string to_string(Quantity which) {
  switch (which) {
    case Quantity::Pressure: return "pressure";
    case Quantity::Viscosity: return "viscosity";
    case Quantity::Capillarity: return "capillarity";
  }
  return "?";
}

}  // namespace nsk
