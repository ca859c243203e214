#pragma once

// Shared models, frozen reference values and random admissible shocks.
// Reference values come from tests/oracles/compute_oracles.py (mpmath, 50 digits).

#include <algorithm>
#include <cmath>
#include <random>

#include "nsk/fluid.hpp"
#include "nsk/shock.hpp"

namespace nsk::testing {

// p = v^(-5/3), mu = 1.2 v^-2, kappa = 10 v^-7; V- = 1.5, V+ = 1, U- = 0.
inline FluidModel numexample_model(double mu_coeff = 1.2) {
  return power_law_model({1.0, -5.0 / 3.0}, {mu_coeff, -2.0}, {10.0, -7.0});
}

inline ShockData numexample_shock(const FluidModel& m) {
  return build_shock(m, 1.5, 1.0, 0.0, ShockFamily::Lax1Backward);
}

// gamma-law pressure with constant viscosity and capillarity.
inline FluidModel constant_coefficient_model(double gamma = 1.4, double mu = 1.0, double kappa = 1.0) {
  return power_law_model({1.0, -gamma}, {mu, 0.0}, {kappa, 0.0});
}

namespace oracle {
inline constexpr double kDpAt15 = -0.56529098397695401;
inline constexpr double kEta1 = 0.37947331922020552;
inline constexpr double kEta15 = 0.69713700231733504;
inline constexpr double kSpeed = -0.99119938904414322;
inline constexpr double kSpeed2 = 0.98247622884148278;
inline constexpr double kF125 = -0.064961841979426513;
inline constexpr double kFprimeMinus = 0.41718524486452878;
inline constexpr double kFprimePlus = -0.68419043782518388;
inline constexpr double kDeltaPlus = 0.28782383282539091;
inline constexpr double kLambdaS = -0.20877411436650958;
inline constexpr double kLambdaU = 0.32771804105180677;
inline constexpr double kAuxLambdaU = 0.2615703419398277;
inline constexpr double kDeltaMinus = -2.4886114151406344;
inline constexpr double kFocusRe = 0.3010768144221585;
inline constexpr double kFocusIm = 0.78876666624874469;
inline constexpr double kAuxCentreMinus = 0.84427489715598761;
inline constexpr double kOscThreshold = 1.9549006856098311;
inline constexpr double kEtaLargeMu = 58.094750193111253;
inline constexpr double kFMinus = -0.02190471394814652;
inline constexpr double kVbar = 1.7956760982195067;
inline constexpr double kQPlus125 = 0.1067916164164922;
inline constexpr double kRhsQ125 = 0.030976220121110207;
inline constexpr double kFullAuxDiff = 0.024664212637463225;
inline constexpr double kM15 = -0.95579352470421325;
}  // namespace oracle

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Random admissible end states: the saddle state in [0.6, 2.5], amplitude in [0.02, 1].
struct ShockSampler {
  std::mt19937_64 rng;
  explicit ShockSampler(unsigned long long seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  ShockData backward(const FluidModel& m) {
    const double vp = uniform(0.6, 2.5), eps = uniform(0.02, 1.0);
    return build_shock(m, vp + eps, vp, uniform(-1.0, 1.0), ShockFamily::Lax1Backward);
  }
  ShockData forward(const FluidModel& m) {
    const double vm = uniform(0.6, 2.5), eps = uniform(0.02, 1.0);
    return build_shock(m, vm, vm + eps, uniform(-1.0, 1.0), ShockFamily::Lax2Forward);
  }
  // Random power-law Lagrangian model: p = c v^-gamma, mu = c' v^a, kappa = c'' v^b.
  FluidModel model() {
    return power_law_model({uniform(0.5, 2.0), -uniform(1.1, 3.0)}, {uniform(0.2, 3.0), uniform(-3.0, 1.0)},
                           {uniform(0.5, 10.0), uniform(-7.0, 1.0)});
  }
};

}  // namespace nsk::testing
