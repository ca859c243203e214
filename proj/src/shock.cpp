#include "nsk/shock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsk/errors.hpp"

namespace nsk {

ShockData build_shock(const FluidModel& model, double v_minus, double v_plus, double u_minus,
                      ShockFamily family) {
  if (model.frame() != Frame::Lagrangian) throw FrameError("build_shock needs a Lagrangian model");
  if (v_minus == v_plus) throw OrderingError("zero-amplitude shock: V- == V+");
  const bool backward = family == ShockFamily::Lax1Backward;
  if (backward && !(v_minus > v_plus)) throw OrderingError("a backward 1-shock needs V- > V+");
  if (!backward && !(v_plus > v_minus)) throw OrderingError("a forward 2-shock needs V+ > V-");
  if (!(std::min(v_minus, v_plus) > model.v_min())) throw DomainError("end state at or below v_min");

  model.check_assumptions(std::min(v_minus, v_plus), std::max(v_minus, v_plus));

  const double p_minus = model.p(v_minus);
  const double p_plus = model.p(v_plus);
  const double s2 = (p_minus - p_plus) / (v_plus - v_minus);
  if (!(s2 > 0.0)) throw LaxError("Rankine-Hugoniot speed is not real", 0.0, 0.0);

  ShockData shock;
  shock.v_minus = v_minus;
  shock.v_plus = v_plus;
  shock.u_minus = u_minus;
  shock.family = family;
  shock.speed = backward ? -std::sqrt(s2) : std::sqrt(s2);
  const double s = shock.speed;
  shock.u_plus = u_minus - s * (v_plus - v_minus);
  shock.a_const = s * v_plus + shock.u_plus;
  shock.b_const = s * shock.u_plus - p_plus;
  shock.c_const = s2 * v_plus + p_plus;
  shock.amplitude = std::abs(v_minus - v_plus);

  // Characteristic speeds of the p-system are -+ sqrt(-p'(v)).
  const double c_plus = std::sqrt(-model.p(v_plus, 1));
  const double c_minus = std::sqrt(-model.p(v_minus, 1));
  if (backward) {
    shock.lax_margin_lo = s - (-c_plus);
    shock.lax_margin_hi = -c_minus - s;
  } else {
    shock.lax_margin_lo = s - c_plus;
    shock.lax_margin_hi = c_minus - s;
  }
  if (!(shock.lax_margin_lo > kLaxMarginFloor) || !(shock.lax_margin_hi > kLaxMarginFloor)) {
    std::ostringstream msg;
    msg << "Lax " << (backward ? "1" : "2") << "-shock inequalities fail: margins "
        << shock.lax_margin_lo << ", " << shock.lax_margin_hi;
    throw LaxError(msg.str(), shock.lax_margin_lo, shock.lax_margin_hi);
  }
  return shock;
}

double f_profile(const ShockData& shock, const FluidModel& model, double v) {
  return model.p(v) + shock.speed * shock.speed * v - shock.c_const;
}

double f_prime(const ShockData& shock, const FluidModel& model, double v) {
  return model.p(v, 1) + shock.speed * shock.speed;
}

double ShockResiduals::max() const {
  return std::max({std::abs(rh1), std::abs(rh2), std::abs(rh_rewritten), std::abs(a_pair),
                   std::abs(b_pair), std::abs(c_pair)});
}

ShockResiduals shock_residuals(const ShockData& sh, const FluidModel& model) {
  const double s = sh.speed;
  const double pp = model.p(sh.v_plus);
  const double pm = model.p(sh.v_minus);
  ShockResiduals r;
  r.rh1 = s * (sh.v_plus - sh.v_minus) - (sh.u_minus - sh.u_plus);
  r.rh2 = s * (sh.u_plus - sh.u_minus) - (pp - pm);
  r.rh_rewritten = s * s * (sh.v_plus - sh.v_minus) - (pm - pp);
  r.a_pair = (s * sh.v_plus + sh.u_plus) - (s * sh.v_minus + sh.u_minus);
  r.b_pair = (s * sh.u_plus - pp) - (s * sh.u_minus - pm);
  r.c_pair = (s * s * sh.v_plus + pp) - (s * s * sh.v_minus + pm);
  return r;
}

double saddle_state(const ShockData& shock) {
  return shock.family == ShockFamily::Lax1Backward ? shock.v_plus : shock.v_minus;
}

double interior_state(const ShockData& shock) {
  return shock.family == ShockFamily::Lax1Backward ? shock.v_minus : shock.v_plus;
}

std::string to_string(ShockFamily family) {
  return family == ShockFamily::Lax1Backward ? "Lax1Backward" : "Lax2Forward";
}

}  // namespace nsk
