#pragma once

#include <string>

#include "nsk/fluid.hpp"

namespace nsk {

enum class ShockFamily { Lax1Backward, Lax2Forward };

/// End states, speed and integration constants of a compressive Lax shock of the
/// p-system in Lagrangian coordinates.
struct ShockData {
  double v_minus = 0.0;
  double v_plus = 0.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double speed = 0.0;
  ShockFamily family = ShockFamily::Lax1Backward;
  double a_const = 0.0;  // s V + U
  double b_const = 0.0;  // s U - p(V)
  double c_const = 0.0;  // s^2 V + p(V)
  double amplitude = 0.0;
  // Lax certificate: lambda_k(W+) < s < lambda_k(W-) holds with these margins.
  double lax_margin_lo = 0.0;  // s - lambda_k(W+)
  double lax_margin_hi = 0.0;  // lambda_k(W-) - s
};

/// Margins below this are treated as Lax failures.
inline constexpr double kLaxMarginFloor = 1e-10;

/// Solve the Rankine-Hugoniot relations for the speed and U+, then certify the
/// Lax inequalities. Throws OrderingError, LaxError, DomainError.
ShockData build_shock(const FluidModel& model, double v_minus, double v_plus, double u_minus,
                      ShockFamily family);

/// f(v) = p(v) + s^2 v - C; vanishes at both end states.
double f_profile(const ShockData& shock, const FluidModel& model, double v);

/// f'(v) = p'(v) + s^2.
double f_prime(const ShockData& shock, const FluidModel& model, double v);

/// Residuals of the jump relations and of the pairwise definitions of A, B, C.
struct ShockResiduals {
  double rh1 = 0.0;
  double rh2 = 0.0;
  double rh_rewritten = 0.0;
  double a_pair = 0.0;
  double b_pair = 0.0;
  double c_pair = 0.0;

  double max() const;
};

ShockResiduals shock_residuals(const ShockData& shock, const FluidModel& model);

/// Saddle and interior end states of the profile system: for a backward shock the
/// saddle is V+, for a forward shock it is V-.
double saddle_state(const ShockData& shock);
double interior_state(const ShockData& shock);

std::string to_string(ShockFamily family);

}  // namespace nsk
