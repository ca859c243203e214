#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsk/fluid.hpp"
#include "nsk/planar.hpp"
#include "nsk/shock.hpp"
#include "nsk/shooting.hpp"

namespace nsk {

/// Profile system V' = Q, Q' = -[f(V) + s mu(V) Q / V + kappa'(V) Q^2 / 2] / kappa(V).
PlanarState rhs_full(const ShockData& shock, const FluidModel& model, PlanarState state);

/// The same system without the viscous term s mu Q / V; Hamiltonian.
PlanarState rhs_aux(const ShockData& shock, const FluidModel& model, PlanarState state);

/// F(v) = integral of f from the saddle state to v (quadrature, abs tol 1e-12).
double potential_energy(const ShockData& shock, const FluidModel& model, double v);

/// H(v, q) = F(v) + kappa(v) q^2 / 2; conserved by rhs_aux, and
/// dH/dy = -s mu(V) Q^2 / V along rhs_full.
double hamiltonian(const ShockData& shock, const FluidModel& model, PlanarState state);

/// Right-hand side of the dissipation identity, -s mu(v) q^2 / v.
double dissipation_rate(const ShockData& shock, const FluidModel& model, double v, double q);

/// The far end of the homoclinic loop: the unique V-bar beyond the interior state
/// with F(V-bar) = 0. Throws BracketError (with the scan) if no sign change is
/// found up to 10x the interior state.
double find_vbar(const ShockData& shock, const FluidModel& model);

/// Upper and lower branches +-sqrt(-2F(v)/kappa(v)) of the homoclinic loop.
/// Throws RangeError outside [saddle, V-bar].
std::pair<double, double> homoclinic_loop(const ShockData& shock, const FluidModel& model, double v);
std::pair<double, double> homoclinic_loop(const ShockData& shock, const FluidModel& model, double v,
                                          double vbar);

/// Shoot the heteroclinic profile along the stable manifold of the saddle (backward
/// shocks, reverse dynamics) or its unstable manifold (forward shocks).
ProfileSolution shoot_profile(const ShockData& shock, const FluidModel& model,
                              const ShootOptions& opts = {});

DissipationCheck dissipation_identity_residual(const ProfileSolution& solution,
                                               const ShockData& shock, const FluidModel& model);

/// V', V'', V''' at a profile state, by substituting the ODE into itself.
struct ProfileDerivatives {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

ProfileDerivatives profile_derivatives(const ShockData& shock, const FluidModel& model, double v,
                                       double q);

struct SmallAmplitudeRow {
  double epsilon = 0.0;
  double v_plus = 0.0;
  double max_d1 = 0.0;
  double max_d2 = 0.0;
  double max_d3 = 0.0;
  double ratio2 = 0.0;  // max|V''| / max|V'|
  double ratio3 = 0.0;  // max|V'''| / max|V'|
  bool converged = false;
  bool monotone = false;
  int sign_changes = 0;
  std::string error;  // non-empty when the row failed
};

struct SmallAmplitudeTable {
  std::vector<SmallAmplitudeRow> rows;
  // Least-squares log-log slopes over the successful rows (NaN with fewer than two).
  double slope_d1 = 0.0;
  double slope_ratio2 = 0.0;
  double slope_ratio3 = 0.0;
  bool all_monotone = false;
};

/// Backward shocks V+ = v_minus - eps with u_minus = 0, one profile per eps.
/// A failing row records its error and does not abort the sweep.
SmallAmplitudeTable small_amplitude_report(const FluidModel& model, double v_minus,
                                           const std::vector<double>& epsilons,
                                           const ShootOptions& opts = {}, bool parallel = false);

}  // namespace nsk
