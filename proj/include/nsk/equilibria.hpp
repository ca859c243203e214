#pragma once

#include <array>
#include <complex>
#include <string>

#include "nsk/fluid.hpp"
#include "nsk/shock.hpp"

namespace nsk {

using Complex = std::complex<double>;

enum class EndState { Minus, Plus };

enum class FullClass { Saddle, UnstableNode, UnstableFocus, StableNode, StableFocus };
enum class AuxClass { Saddle, Centre };
enum class Oscillation { Oscillatory, Monotone };

/// Below this |Delta| a non-saddle rest point is reported as a node flagged borderline.
inline constexpr double kDiscriminantTieZone = 1e-12;
/// Below this |f'(V*)| the rest point is degenerate (zero-amplitude limit).
inline constexpr double kDegenerateSlope = 1e-12;

/// Linearisation of the profile system and of its inviscid auxiliary system at (V*, 0).
///
/// Eigenvalues come in the order (stable-or-lower, unstable-or-upper): for real
/// pairs the smaller first, for complex pairs the one with negative imaginary part
/// first. Eigenvectors are (1, lambda) for the full system and (1, Lambda) for the
/// auxiliary one.
struct EquilibriumReport {
  EndState which = EndState::Plus;
  double v_star = 0.0;
  double f_prime = 0.0;
  double discriminant = 0.0;
  std::array<Complex, 2> full_eigs{};
  std::array<Complex, 2> aux_eigs{};
  std::array<std::array<Complex, 2>, 2> full_eigvecs{};
  std::array<std::array<Complex, 2>, 2> aux_eigvecs{};
  FullClass class_full = FullClass::Saddle;
  AuxClass class_aux = AuxClass::Saddle;
  double eta_value = 0.0;
  double osc_threshold = 0.0;
  bool borderline = false;
  /// Largest characteristic-polynomial residual of the four reported eigenvalues.
  double eigen_residual = 0.0;
  /// Saddles only: smallest gap in the interlacing chain between full and
  /// auxiliary eigenvalues (positive when the chain holds).
  double interlacing_margin = 0.0;
  bool interlacing_certified = false;
};

EquilibriumReport analyze_equilibrium(const ShockData& shock, const FluidModel& model, EndState which);

/// Eigen data and classification from lambda^2 + b lambda + c = 0 (full system) and
/// Lambda^2 + c = 0 (auxiliary system). Shared by both frames.
void classify_linearization(EquilibriumReport& report, double b, double c);

/// Oscillatory iff 0 < eta(V*) < 2 V* sqrt(f'(V*)) / |s| at the interior rest point
/// (V- for backward shocks, V+ for forward shocks).
Oscillation oscillation_criterion(const ShockData& shock, const FluidModel& model);

/// The rest point inside the invariant region: V- (backward) or V+ (forward).
EndState interior_end(const ShockData& shock);
EndState saddle_end(const ShockData& shock);

std::string to_string(EndState which);
std::string to_string(FullClass c);
std::string to_string(AuxClass c);
std::string to_string(Oscillation o);

}  // namespace nsk
