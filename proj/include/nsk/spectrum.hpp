#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nsk/equilibria.hpp"
#include "nsk/fluid.hpp"
#include "nsk/shock.hpp"
#include "nsk/shooting.hpp"

namespace nsk {

/// Roots of the endpoint dispersion relation
///   lambda^2 + (xi^2 mu/V - 2 i xi s) lambda - (s^2 + p') xi^2 - (s mu/V) i xi^3 + kappa xi^4 = 0.
/// l1 carries +sqrt(delta_tilde) (principal branch), l2 the minus sign.
struct DispersionPair {
  Complex l1;
  Complex l2;
  double delta_tilde = 0.0;  // xi^4 mu^2/V^2 + 4 p' xi^2 - 4 kappa xi^4
};

DispersionPair dispersion_roots(const ShockData& shock, const FluidModel& model, EndState which,
                                double xi);

/// The explicit form -xi^2 mu/(2V) + i xi s +- sqrt(delta_tilde)/2, evaluated independently.
DispersionPair dispersion_closed_form(const ShockData& shock, const FluidModel& model,
                                      EndState which, double xi);

/// |P(lambda)| relative to the magnitudes of the terms of P.
double dispersion_residual(const ShockData& shock, const FluidModel& model, EndState which,
                           double xi, Complex lambda);

struct Splitting {
  int n_stable = 0;
  int n_unstable = 0;
  int n_center = 0;
  std::array<Complex, 4> roots{};
  double max_residual = 0.0;
  std::array<int, 5> sign_pattern{};  // signs of a4..a0 (real probes)
  bool sign_pattern_ok = false;       // matches the family's Descartes table
};

/// Dead zone of the root count: |Re theta| below this counts as a center root.
inline constexpr double kCenterDeadZone = 1e-9;

struct PowerLawCheck {
  double gamma = 0.0;
  double beta = 0.0;
  double closed_form = 0.0;
  double relative_error = 0.0;
  bool passes = false;
};

/// Sampled Fredholm borders at both end states. curves[e][b]: e = 0 minus, 1 plus;
/// b = 0 branch 1, 1 branch 2.
struct SpectrumReport {
  std::vector<double> xi_grid;
  std::array<std::array<std::vector<Complex>, 2>, 2> curves;
  std::array<std::vector<double>, 2> delta_tilde;
  double max_re = 0.0;
  std::optional<Splitting> splitting;  // filled by callers that probe Omega
  double m_value = 0.0;
  std::optional<PowerLawCheck> power_law_check;
};

/// Uniform grid xi_k = lo + (hi - lo) k / (n - 1), k = 0..n-1.
SpectrumReport fredholm_borders(const ShockData& shock, const FluidModel& model, double lo, double hi,
                                int n);

/// Coefficients a4..a0 of theta^4 + (s mu/(V kappa)) theta^3 - alpha theta^2
/// - (2 lambda s/kappa) theta + lambda^2/kappa, alpha = lambda mu/(V kappa) - (s^2+p')/kappa.
std::array<Complex, 5> quartic_coeffs(const ShockData& shock, const FluidModel& model, EndState which,
                                      Complex lambda);

/// Companion-matrix roots of the quartic, counted by the sign of their real part.
/// Throws CenterRootError when any root falls in the dead zone.
Splitting consistent_splitting(const ShockData& shock, const FluidModel& model, EndState which,
                               double lambda_probe);

/// All four roots of a4 theta^4 + ... + a0 via the companion matrix.
std::array<Complex, 4> quartic_roots(const std::array<Complex, 5>& coeffs);

/// M = -kappa'(V-) p'(V-) + kappa(V-) p''(V-).
double point_condition_m(const FluidModel& model, double v_minus);

/// For an all-power-law Lagrangian model p = c v^-gamma, kappa = c' v^(-beta-5): compare
/// M with c c' gamma (gamma - beta - 4) v^(-gamma-beta-7). Empty for other models.
std::optional<PowerLawCheck> power_law_check(const FluidModel& model, double v_minus);

struct EnergyDiagnostics {
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<double> f3;
  double min_f1 = 0.0;
  double max_f1 = 0.0;
  // Empirical pinching constants f_k / |V'| over samples where |V'| is resolved.
  double min_f2_ratio = 0.0;
  double max_f2_ratio = 0.0;
  double min_f3_ratio = 0.0;
  double max_f3_ratio = 0.0;
  int negative_f2 = 0;
  int negative_f3 = 0;
};

/// f1 = -p'(V) + ((mu'V - mu)/V^2) U', f2 = (s/(2 f1))' - (mu/(2 V f1))'',
/// f3 = (s/2)(kappa/f1)', with y-derivatives propagated analytically through the
/// profile ODE. Throws SmallDenominatorError when min f1 < 1e-8.
EnergyDiagnostics energy_diagnostics(const ProfileSolution& solution, const ShockData& shock,
                                     const FluidModel& model);

/// CSV: xi, re/im of l1 and l2 at the minus then the plus state.
std::string spectrum_csv(const SpectrumReport& report);

}  // namespace nsk
