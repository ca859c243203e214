#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsk/fluid.hpp"
#include "nsk/planar.hpp"

namespace nsk {

struct ShootOptions {
  Integrator integrator = Integrator::RK4;
  double step = 1e-3;
  double seed_offset = 1e-6;
  double tol = 1e-4;
  long max_len = 1000000;  // steps
};

/// Escape threshold of the energy monitor: the invariant region is H <= 0.
inline constexpr double kEscapeTolerance = 1e-8;

/// A profile trajectory in either frame. In the Eulerian frame `v_samples`
/// holds the density R and `u_samples` the momentum J.
struct ProfileSolution {
  Frame frame = Frame::Lagrangian;
  std::vector<double> y_grid;  // increasing
  std::vector<double> v_samples;
  std::vector<double> q_samples;
  std::vector<double> u_samples;
  std::vector<double> h_samples;
  bool converged = false;
  double terminal_distance = 0.0;
  bool monotone = true;
  int sign_changes = 0;
  Integrator integrator = Integrator::RK4;
  double step = 1e-3;
  double seed_offset = 0.0;
  double tol = 0.0;
  double max_h = 0.0;

  std::size_t size() const { return y_grid.size(); }
};

/// Everything the shooting core needs from one frame.
struct ShootProblem {
  PlanarField field;                                  // profile system in increasing y
  bool reverse = false;                               // integrate toward decreasing y
  PlanarState seed;
  PlanarState target;
  std::function<double(PlanarState)> energy;          // invariant-region functional
  std::function<double(double)> conjugate;            // U (or J) from the first integral
  double x_floor = 0.0;                               // validity floor of the first coordinate
};

/// Fixed-step shooting from `seed` until within opts.tol of `target`.
/// Reverse dynamics negate the field; the step is always positive.
/// Throws EscapeError when the energy exceeds kEscapeTolerance and DomainError
/// when the first coordinate reaches the floor or the state blows up.
ProfileSolution shoot(const ShootProblem& problem, const ShootOptions& opts, Frame frame);

/// Strict sign changes of a sampled sequence (zeros are skipped).
int count_sign_changes(const std::vector<double>& values);

/// Centered finite-difference derivative of `values` on a uniform grid: 3-point
/// for first-order integrators, 5-point for RK4. Entries without a full stencil are 0.
std::vector<double> uniform_derivative(const std::vector<double>& values, double h,
                                       Integrator integrator);
int stencil_half_width(Integrator integrator);

/// Diagnostics of the dissipation identity dH/dy = rate(state).
struct DissipationCheck {
  double max_residual = 0.0;
  double min_dhdy = 0.0;
  double max_dhdy = 0.0;
  bool sign_certified = true;
};

/// `sign` is +1 when H must be non-decreasing in y, -1 when non-increasing.
DissipationCheck dissipation_check(const ProfileSolution& solution,
                                   const std::function<double(double, double)>& rate, int sign);

/// CSV with the given column names for (y, V, Q, U, H); 17 significant digits.
std::string profile_csv(const ProfileSolution& solution, const std::vector<std::string>& columns);

}  // namespace nsk
