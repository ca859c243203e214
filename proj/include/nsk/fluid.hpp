#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace nsk {

enum class Frame { Lagrangian, Eulerian };

/// Which of the three thermodynamic potentials of a fluid model.
enum class Quantity { Pressure, Viscosity, Capillarity };

/// Highest derivative order any operation in the library asks for.
inline constexpr int kMaxDerivativeOrder = 3;

/// potential(v) = coefficient * v^exponent, with closed-form derivatives of any order.
struct PowerLaw {
  double coefficient = 1.0;
  double exponent = 0.0;

  double derivative(int order, double v) const;
};

/// User-supplied value and derivative callbacks; derivatives[k] is the k-th derivative.
struct TabulatedCallable {
  std::vector<std::function<double(double)>> derivatives;
};

using Potential = std::variant<PowerLaw, TabulatedCallable>;

/// Highest derivative order the potential can evaluate.
int max_order(const Potential& potential);

/// Raw evaluation without a domain check. Throws OrderError for unsupported orders.
double evaluate(const Potential& potential, int order, double x);

/// Pressure, viscosity and capillarity of an isentropic Korteweg fluid.
///
/// In the Lagrangian frame the argument is the specific volume v; in the
/// Eulerian frame it is the density rho. `v_min` is the validity floor of that
/// argument in either frame. Immutable after construction.
class FluidModel {
 public:
  FluidModel(Potential pressure, Potential viscosity, Potential capillarity,
             Frame frame, double v_min = 1e-3);

  const Potential& potential(Quantity which) const;
  Frame frame() const { return frame_; }
  double v_min() const { return v_min_; }

  // Domain-checked shorthands: throw DomainError below v_min.
  double p(double v, int order = 0) const { return eval(Quantity::Pressure, order, v); }
  double mu(double v, int order = 0) const { return eval(Quantity::Viscosity, order, v); }
  double kappa(double v, int order = 0) const { return eval(Quantity::Capillarity, order, v); }

  double eval(Quantity which, int order, double v) const;

  /// Sample the sign assumptions (mu, kappa > 0; pressure monotone and convex in
  /// the frame's sense) on [lo, hi]. Throws DomainError naming the first violation.
  void check_assumptions(double lo, double hi, int samples = 64) const;

 private:
  Potential pressure_;
  Potential viscosity_;
  Potential capillarity_;
  Frame frame_;
  double v_min_;
};

/// eval(model, which, order, v): potential value or derivative at v.
double eval(const FluidModel& model, Quantity which, int order, double v);

/// Diffusion-dispersion ratio mu(v) / sqrt(kappa(v)).
double eta(const FluidModel& model, double v);

/// p(v) = p~(1/v), mu(v) = mu~(1/v), kappa(v) = kappa~(1/v) / v^5.
/// Throws FrameError unless the input is Eulerian.
FluidModel to_lagrangian(const FluidModel& eulerian_model);

/// Inverse of to_lagrangian. Throws FrameError unless the input is Lagrangian.
FluidModel to_eulerian(const FluidModel& lagrangian_model);

/// Convenience constructor for an all-power-law model.
FluidModel power_law_model(PowerLaw pressure, PowerLaw viscosity, PowerLaw capillarity,
                           Frame frame = Frame::Lagrangian, double v_min = 1e-3);

std::string to_string(Frame frame);
std::string to_string(Quantity which);

}  // namespace nsk
