#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsk/eulerian.hpp"
#include "nsk/fluid.hpp"
#include "nsk/shock.hpp"
#include "nsk/shooting.hpp"

namespace nsk::cli {

/// Malformed scenario file or arguments; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumOptions {
  double xi_lo = -3.0;
  double xi_hi = 3.0;
  int n_xi = 601;
  std::optional<double> lambda_probe;  // default 100 (1 + |s|)
};

struct SweepOptions {
  double v_minus = 2.5;
  std::vector<double> epsilons{0.02, 0.04, 0.08};
  bool parallel = true;
};

/// A fully resolved scenario. Power-law potentials only (the file format has no
/// way to carry callables).
struct Scenario {
  Frame frame = Frame::Lagrangian;
  PowerLaw pressure;
  PowerLaw viscosity;
  PowerLaw capillarity;
  double v_min = 1e-3;
  // Lagrangian (v, u) or Eulerian (r, j) end states, in the scenario's frame.
  double state_minus = 0.0;
  double state_plus = 0.0;
  double flow_minus = 0.0;
  bool first_family = true;
  ShootOptions profile;
  SpectrumOptions spectrum;
  SweepOptions sweep;
};

/// Validate and resolve. Throws UsageError naming the offending key.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

/// Round-trip form with every default materialized.
nlohmann::json to_json(const Scenario& sc);

/// Model and shock in the Lagrangian frame (transforming an Eulerian scenario).
FluidModel lagrangian_model(const Scenario& sc);
ShockData lagrangian_shock(const Scenario& sc);

/// Model and shock in the Eulerian frame (transforming a Lagrangian scenario).
FluidModel eulerian_model(const Scenario& sc);
EulerianShockData eulerian_shock(const Scenario& sc);

}  // namespace nsk::cli
