#include "nsk/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "nsk/errors.hpp"
#include "nsk/numerics.hpp"

namespace nsk {

namespace {

constexpr int kRbarScanPoints = 512;

double potential_integrand(const EulerianShockData& es, const FluidModel& model, double z) {
  return -f_hat(es, model, z) / (z * z);
}

}  // namespace

EulerianShockData build_eulerian_shock(const FluidModel& model, double r_minus, double r_plus,
                                       double j_minus, EulerianFamily family) {
  if (model.frame() != Frame::Eulerian) throw FrameError("build_eulerian_shock needs an Eulerian model");
  if (r_minus == r_plus) throw OrderingError("zero-amplitude shock: R- == R+");
  const bool first = family == EulerianFamily::Lax1;
  if (first && !(r_plus > r_minus)) throw OrderingError("a 1-shock needs R+ > R-");
  if (!first && !(r_minus > r_plus)) throw OrderingError("a 2-shock needs R- > R+");
  if (!(std::min(r_minus, r_plus) > model.v_min())) throw DomainError("end state at or below rho_min");

  model.check_assumptions(std::min(r_minus, r_plus), std::max(r_minus, r_plus));

  const double p_minus = model.p(r_minus), p_plus = model.p(r_plus);
  const double a2 = (p_plus - p_minus) * r_plus * r_minus / (r_plus - r_minus);
  if (!(a2 > 0.0)) throw LaxError("Rankine-Hugoniot mass flux is not real", 0.0, 0.0);

  EulerianShockData es;
  es.r_minus = r_minus;
  es.r_plus = r_plus;
  es.j_minus = j_minus;
  es.family = family;
  es.a_const = first ? -std::sqrt(a2) : std::sqrt(a2);
  es.speed = (es.a_const + j_minus) / r_minus;
  es.j_plus = es.speed * r_plus - es.a_const;
  es.amplitude = std::abs(r_plus - r_minus);

  const double c_plus = std::sqrt(model.p(r_plus, 1)), c_minus = std::sqrt(model.p(r_minus, 1));
  const double u_plus = es.j_plus / r_plus, u_minus = j_minus / r_minus;
  const double sign = first ? -1.0 : 1.0;
  es.lax_margin_lo = es.speed - (u_plus + sign * c_plus);
  es.lax_margin_hi = (u_minus + sign * c_minus) - es.speed;
  if (!(es.lax_margin_lo > kLaxMarginFloor) || !(es.lax_margin_hi > kLaxMarginFloor)) {
    std::ostringstream msg;
    msg << "Lax " << (first ? "1" : "2") << "-shock inequalities fail: margins " << es.lax_margin_lo
        << ", " << es.lax_margin_hi;
    throw LaxError(msg.str(), es.lax_margin_lo, es.lax_margin_hi);
  }
  return es;
}

double eulerian_residual(const EulerianShockData& es, const FluidModel& model) {
  const double s = es.speed;
  const double mass = s * (es.r_plus - es.r_minus) - (es.j_plus - es.j_minus);
  const double flux_plus = es.j_plus * es.j_plus / es.r_plus + model.p(es.r_plus);
  const double flux_minus = es.j_minus * es.j_minus / es.r_minus + model.p(es.r_minus);
  const double momentum = s * (es.j_plus - es.j_minus) - (flux_plus - flux_minus);
  const double a_plus = s * es.r_plus - es.j_plus - es.a_const;
  const double a_minus = s * es.r_minus - es.j_minus - es.a_const;
  return std::max({std::abs(mass), std::abs(momentum), std::abs(a_plus), std::abs(a_minus)});
}

double f_hat(const EulerianShockData& es, const FluidModel& model, double r) {
  const double a2 = es.a_const * es.a_const;
  return model.p(r) - model.p(es.r_minus) + a2 / r - a2 / es.r_minus;
}

double f_hat_prime(const EulerianShockData& es, const FluidModel& model, double r) {
  return model.p(r, 1) - es.a_const * es.a_const / (r * r);
}

PlanarState rhs_full_euler(const EulerianShockData& es, const FluidModel& model, PlanarState state) {
  const double r = state.x, q = state.q;
  const double kappa = model.kappa(r);
  const double qp = f_hat(es, model, r) / (r * kappa) - es.a_const * model.mu(r) * q / (r * r * r * kappa) -
                    0.5 * (model.kappa(r, 1) / kappa - 1.0 / r) * q * q;
  return {q, qp};
}

PlanarState rhs_aux_euler(const EulerianShockData& es, const FluidModel& model, PlanarState state) {
  const double r = state.x, q = state.q;
  const double kappa = model.kappa(r);
  const double qp = f_hat(es, model, r) / (r * kappa) - 0.5 * (model.kappa(r, 1) / kappa - 1.0 / r) * q * q;
  return {q, qp};
}

double eulerian_saddle(const EulerianShockData& es) { return std::max(es.r_minus, es.r_plus); }
double eulerian_interior(const EulerianShockData& es) { return std::min(es.r_minus, es.r_plus); }

double eulerian_energy(const EulerianShockData& es, const FluidModel& model, PlanarState state) {
  if (state.x < model.v_min()) throw DomainError("eulerian_energy: density below rho_min");
  const double phi = integrate([&](double z) { return potential_integrand(es, model, z); },
                               eulerian_saddle(es), state.x);
  return phi + 0.5 * model.kappa(state.x) * state.q * state.q / state.x;
}

double eulerian_dissipation_rate(const EulerianShockData& es, const FluidModel& model, double r,
                                 double q) {
  return -es.a_const * model.mu(r) * q * q / (r * r * r * r);
}

double find_rbar(const EulerianShockData& es, const FluidModel& model) {
  const double r_int = eulerian_interior(es);
  const double r_end = std::max(model.v_min(), 0.1 * r_int);
  auto g = [&](double z) { return potential_integrand(es, model, z); };
  const double h = (r_int - r_end) / kRbarScanPoints;
  double phi_prev = integrate(g, eulerian_saddle(es), r_int);
  double r_prev = r_int;
  std::ostringstream trace;
  trace << "potential scan: (" << r_prev << ", " << phi_prev << ")";
  for (int k = 1; k <= kRbarScanPoints; ++k) {
    const double r = r_int - k * h;
    const double phi = phi_prev + integrate(g, r_prev, r);
    if (k % 64 == 0) trace << " (" << r << ", " << phi << ")";
    if (phi_prev < 0.0 && phi >= 0.0) {
      const double base = phi_prev, hi = r_prev;
      return bisect_root([&](double x) { return base + integrate(g, hi, x); }, r, r_prev, 1e-13);
    }
    phi_prev = phi;
    r_prev = r;
  }
  throw BracketError("no sign change of the potential in [" + std::to_string(r_end) + ", " +
                     std::to_string(r_int) + "); " + trace.str());
}

EquilibriumReport analyze_equilibrium_euler(const EulerianShockData& es, const FluidModel& model,
                                            EndState which) {
  EquilibriumReport rep;
  rep.which = which;
  rep.v_star = which == EndState::Minus ? es.r_minus : es.r_plus;
  const double r = rep.v_star;
  const double kappa = model.kappa(r), mu = model.mu(r);
  rep.f_prime = f_hat_prime(es, model, r);
  if (std::abs(rep.f_prime) < kDegenerateSlope) {
    std::ostringstream msg;
    msg << "degenerate rest point: |f^'(" << r << ")| = " << std::abs(rep.f_prime);
    throw DegenerateError(msg.str());
  }
  classify_linearization(rep, es.a_const * mu / (r * r * r * kappa), -rep.f_prime / (r * kappa));
  rep.eta_value = eta(model, r);
  rep.osc_threshold = 2.0 * std::sqrt(std::abs(std::pow(r, 5) * rep.f_prime)) / std::abs(es.a_const);
  return rep;
}

Oscillation oscillation_criterion_euler(const EulerianShockData& es, const FluidModel& model) {
  const EndState interior = es.family == EulerianFamily::Lax1 ? EndState::Minus : EndState::Plus;
  const EquilibriumReport rep = analyze_equilibrium_euler(es, model, interior);
  const bool oscillatory = rep.eta_value > 0.0 && rep.eta_value < rep.osc_threshold && !rep.borderline;
  return oscillatory ? Oscillation::Oscillatory : Oscillation::Monotone;
}

ProfileSolution shoot_profile_euler(const EulerianShockData& es, const FluidModel& model,
                                    const ShootOptions& opts) {
  const bool first = es.family == EulerianFamily::Lax1;
  const EndState saddle_end = first ? EndState::Plus : EndState::Minus;
  const EquilibriumReport saddle = analyze_equilibrium_euler(es, model, saddle_end);
  // 1-shock: stable manifold of (R+, 0), reverse dynamics; 2-shock: unstable manifold of (R-, 0).
  const double lambda = first ? saddle.full_eigs[0].real() : saddle.full_eigs[1].real();
  const double r_saddle = eulerian_saddle(es);

  const double rbar = find_rbar(es, model);
  const double lo = std::max(model.v_min(), rbar - 0.1 * es.amplitude);
  const double hi = r_saddle + 0.1 * es.amplitude;
  auto table = std::make_shared<AntiderivativeTable>(
      [&es, &model](double z) { return potential_integrand(es, model, z); }, r_saddle, lo, hi);

  ShootProblem problem;
  problem.field = [&es, &model](PlanarState x) { return rhs_full_euler(es, model, x); };
  problem.reverse = first;
  // The profile lives on the low-density side of the saddle.
  problem.seed = PlanarState{r_saddle, 0.0} - opts.seed_offset * PlanarState{1.0, lambda};
  problem.target = PlanarState{eulerian_interior(es), 0.0};
  problem.energy = [table, &model](PlanarState x) {
    return (*table)(x.x) + 0.5 * model.kappa(x.x) * x.q * x.q / x.x;
  };
  const double s = es.speed, a = es.a_const;
  problem.conjugate = [s, a](double r) { return s * r - a; };
  problem.x_floor = model.v_min();
  return shoot(problem, opts, Frame::Eulerian);
}

DissipationCheck dissipation_identity_residual_euler(const ProfileSolution& solution,
                                                     const EulerianShockData& es,
                                                     const FluidModel& model) {
  return dissipation_check(
      solution, [&](double r, double q) { return eulerian_dissipation_rate(es, model, r, q); },
      es.a_const < 0.0 ? 1 : -1);
}

PlanarState to_lagrangian_state(PlanarState e) {
  return {1.0 / e.x, -e.q / (e.x * e.x * e.x)};
}

double eulerian_q_prime_from_lagrangian(double r, double q_l, double q_l_prime) {
  const double r4 = r * r * r * r;
  return 3.0 * r4 * r * q_l * q_l - r4 * q_l_prime;
}

ShockData to_lagrangian_shock(const EulerianShockData& es, const FluidModel& lagrangian_model) {
  const ShockFamily family =
      es.family == EulerianFamily::Lax1 ? ShockFamily::Lax1Backward : ShockFamily::Lax2Forward;
  return build_shock(lagrangian_model, 1.0 / es.r_minus, 1.0 / es.r_plus, es.j_minus / es.r_minus,
                     family);
}

std::string to_string(EulerianFamily family) { return family == EulerianFamily::Lax1 ? "Lax1" : "Lax2"; }

}  // namespace nsk
