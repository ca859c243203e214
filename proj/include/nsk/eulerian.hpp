#pragma once

#include <string>
#include <utility>

#include "nsk/equilibria.hpp"
#include "nsk/fluid.hpp"
#include "nsk/planar.hpp"
#include "nsk/shock.hpp"
#include "nsk/shooting.hpp"

namespace nsk {

enum class EulerianFamily { Lax1, Lax2 };

/// Compressive shock of the Euler system rho_t + J_x = 0, J_t + (J^2/rho + p)_x = 0.
struct EulerianShockData {
  double r_minus = 0.0;
  double r_plus = 0.0;
  double j_minus = 0.0;
  double j_plus = 0.0;
  double speed = 0.0;
  EulerianFamily family = EulerianFamily::Lax1;
  double a_const = 0.0;  // s R - J, the same on both sides; negative for a 1-shock
  double amplitude = 0.0;
  double lax_margin_lo = 0.0;  // s - lambda_k(W+)
  double lax_margin_hi = 0.0;  // lambda_k(W-) - s
};

/// Rankine-Hugoniot speed and J+ from (R-, R+, J-), then the Lax inequalities for
/// the characteristic speeds J/R -+ sqrt(p'(R)). A 1-shock needs R+ > R-, a
/// 2-shock R+ < R-. Throws FrameError, OrderingError, LaxError, DomainError.
EulerianShockData build_eulerian_shock(const FluidModel& model, double r_minus, double r_plus,
                                       double j_minus, EulerianFamily family);

/// Max of |s R+ - J+ - A|, |s R- - J- - A| and the momentum jump residual.
double eulerian_residual(const EulerianShockData& es, const FluidModel& model);

/// f^(R) = p(R) - p(R-) + A^2/R - A^2/R-; zero at both end states.
double f_hat(const EulerianShockData& es, const FluidModel& model, double r);
double f_hat_prime(const EulerianShockData& es, const FluidModel& model, double r);

/// R' = Q, Q' = f^/(R kappa) - A mu Q/(R^3 kappa) - (kappa'/kappa - 1/R) Q^2 / 2.
PlanarState rhs_full_euler(const EulerianShockData& es, const FluidModel& model, PlanarState state);
/// The same without the A-term.
PlanarState rhs_aux_euler(const EulerianShockData& es, const FluidModel& model, PlanarState state);

/// The saddle is the larger density (R+ for a 1-shock, R- for a 2-shock).
double eulerian_saddle(const EulerianShockData& es);
double eulerian_interior(const EulerianShockData& es);

/// Conserved functional of rhs_aux_euler:
///   H(R, Q) = -integral_{R_saddle}^{R} f^(z)/z^2 dz + kappa(R) Q^2 / (2R),
/// with dH/dy = -A mu(R) Q^2 / R^4 along rhs_full_euler.
double eulerian_energy(const EulerianShockData& es, const FluidModel& model, PlanarState state);
double eulerian_dissipation_rate(const EulerianShockData& es, const FluidModel& model, double r,
                                 double q);

/// Far end R-bar < interior of the zero level set of the potential part of H.
double find_rbar(const EulerianShockData& es, const FluidModel& model);

/// Linearisation at (R*, 0): lambda^2 + (A mu/(R^3 kappa)) lambda - f^'/(R kappa) = 0.
/// `f_prime` holds f^'(R*), `osc_threshold` is 2 sqrt(-R^5 f^'(R*))/|A|.
EquilibriumReport analyze_equilibrium_euler(const EulerianShockData& es, const FluidModel& model,
                                            EndState which);

/// Oscillatory iff eta(R*) < 2 sqrt(-R*^5 f^'(R*))/|A| at the interior state.
Oscillation oscillation_criterion_euler(const EulerianShockData& es, const FluidModel& model);

ProfileSolution shoot_profile_euler(const EulerianShockData& es, const FluidModel& model,
                                    const ShootOptions& opts = {});

DissipationCheck dissipation_identity_residual_euler(const ProfileSolution& solution,
                                                     const EulerianShockData& es,
                                                     const FluidModel& model);

/// Frame map of a profile-system state: V = 1/R, Q_L = -Q_E / R^3.
PlanarState to_lagrangian_state(PlanarState eulerian);
/// Eulerian profile acceleration implied by a Lagrangian one at the mapped state:
/// dQ_E/dy_E = 3 R^5 Q_L^2 - R^4 dQ_L/dy_L.
double eulerian_q_prime_from_lagrangian(double r, double q_l, double q_l_prime);

/// The Lagrangian shock with V = 1/R, u = J/R. Needs the model to_lagrangian(model).
ShockData to_lagrangian_shock(const EulerianShockData& es, const FluidModel& lagrangian_model);

std::string to_string(EulerianFamily family);

}  // namespace nsk
