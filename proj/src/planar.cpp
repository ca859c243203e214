#include "nsk/planar.hpp"

#include <stdexcept>

namespace nsk {

int order_of(Integrator integrator) { return integrator == Integrator::Euler ? 1 : 4; }

std::string to_string(Integrator integrator) {
  return integrator == Integrator::Euler ? "euler" : "rk4";
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "euler") return Integrator::Euler;
  if (name == "rk4") return Integrator::RK4;
  throw std::invalid_argument("unknown integrator '" + name + "' (expected euler|rk4)");
}

PlanarState step(const PlanarField& field, PlanarState y, double h, Integrator integrator) {
  if (integrator == Integrator::Euler) return y + h * field(y);
  const PlanarState k1 = field(y);
  const PlanarState k2 = field(y + (0.5 * h) * k1);
  const PlanarState k3 = field(y + (0.5 * h) * k2);
  const PlanarState k4 = field(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

PlanarField reversed(PlanarField field) {
  return [field = std::move(field)](PlanarState y) { return -1.0 * field(y); };
}

std::vector<PlanarState> integrate_trajectory(const PlanarField& field, PlanarState start, double h,
                                              long steps, Integrator integrator) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  std::vector<PlanarState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(start);
  for (long i = 0; i < steps; ++i) out.push_back(step(field, out.back(), h, integrator));
  return out;
}

}  // namespace nsk
