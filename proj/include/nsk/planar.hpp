#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace nsk {

/// A point (x, q) of a planar first-order system x' = q, q' = g(x, q).
struct PlanarState {
  double x = 0.0;
  double q = 0.0;

  friend PlanarState operator+(PlanarState a, PlanarState b) { return {a.x + b.x, a.q + b.q}; }
  friend PlanarState operator-(PlanarState a, PlanarState b) { return {a.x - b.x, a.q - b.q}; }
  friend PlanarState operator*(double c, PlanarState a) { return {c * a.x, c * a.q}; }
};

inline double distance(PlanarState a, PlanarState b) { return std::hypot(a.x - b.x, a.q - b.q); }

using PlanarField = std::function<PlanarState(PlanarState)>;

enum class Integrator { Euler, RK4 };

int order_of(Integrator integrator);
std::string to_string(Integrator integrator);
Integrator integrator_from_string(const std::string& name);

/// One fixed step of size h > 0.
PlanarState step(const PlanarField& field, PlanarState state, double h, Integrator integrator);

/// The field with its sign flipped: integrating it forward runs the original backward.
PlanarField reversed(PlanarField field);

/// Fixed-step trajectory of `steps` steps, including the initial state.
std::vector<PlanarState> integrate_trajectory(const PlanarField& field, PlanarState start, double h,
                                              long steps, Integrator integrator);

}  // namespace nsk
