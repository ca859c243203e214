#include "nsk/profile.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <memory>
#include <sstream>

#include "nsk/equilibria.hpp"
#include "nsk/errors.hpp"
#include "nsk/numerics.hpp"

namespace nsk {

namespace {

constexpr int kVbarScanPoints = 512;

double q_prime_full(const ShockData& shock, const FluidModel& model, double v, double q) {
  const double s = shock.speed;
  const double kappa = model.kappa(v);
  return -(f_profile(shock, model, v) + s * model.mu(v) * q / v + 0.5 * model.kappa(v, 1) * q * q) /
         kappa;
}

}  // namespace

PlanarState rhs_full(const ShockData& shock, const FluidModel& model, PlanarState state) {
  return {state.q, q_prime_full(shock, model, state.x, state.q)};
}

PlanarState rhs_aux(const ShockData& shock, const FluidModel& model, PlanarState state) {
  const double v = state.x, q = state.q;
  const double kappa = model.kappa(v);
  return {q, -(f_profile(shock, model, v) + 0.5 * model.kappa(v, 1) * q * q) / kappa};
}

double potential_energy(const ShockData& shock, const FluidModel& model, double v) {
  if (v < model.v_min()) {
    std::ostringstream msg;
    msg << "potential_energy: v = " << v << " below v_min = " << model.v_min();
    throw DomainError(msg.str());
  }
  return integrate([&](double z) { return f_profile(shock, model, z); }, saddle_state(shock), v);
}

double hamiltonian(const ShockData& shock, const FluidModel& model, PlanarState state) {
  return potential_energy(shock, model, state.x) + 0.5 * model.kappa(state.x) * state.q * state.q;
}

double dissipation_rate(const ShockData& shock, const FluidModel& model, double v, double q) {
  return -shock.speed * model.mu(v) * q * q / v;
}

double find_vbar(const ShockData& shock, const FluidModel& model) {
  const double v_int = interior_state(shock);
  const double v_end = 10.0 * v_int;
  auto f = [&](double z) { return f_profile(shock, model, z); };
  const double h = (v_end - v_int) / kVbarScanPoints;
  double f_prev = potential_energy(shock, model, v_int);
  double v_prev = v_int;
  std::ostringstream trace;
  trace << "F scan: (" << v_prev << ", " << f_prev << ")";
  for (int k = 1; k <= kVbarScanPoints; ++k) {
    const double v = v_int + k * h;
    const double f_cur = f_prev + integrate(f, v_prev, v);
    if (k % 64 == 0) trace << " (" << v << ", " << f_cur << ")";
    if (f_prev < 0.0 && f_cur >= 0.0) {
      const double base = f_prev, lo = v_prev;
      return bisect_root([&](double x) { return base + integrate(f, lo, x); }, v_prev, v, 1e-13);
    }
    f_prev = f_cur;
    v_prev = v;
  }
  throw BracketError("no sign change of F in (" + std::to_string(v_int) + ", " +
                     std::to_string(v_end) + "]; " + trace.str());
}

std::pair<double, double> homoclinic_loop(const ShockData& shock, const FluidModel& model, double v,
                                          double vbar) {
  const double lo = saddle_state(shock);
  if (v < lo || v > vbar) {
    std::ostringstream msg;
    msg << "homoclinic_loop: v = " << v << " outside [" << lo << ", " << vbar << "]";
    throw RangeError(msg.str());
  }
  if (v == lo || v == vbar) return {0.0, 0.0};  // F vanishes there by construction
  const double F = potential_energy(shock, model, v);
  // Rounding can leave F a hair above zero at the two ends.
  const double q = std::sqrt(std::max(0.0, -2.0 * F / model.kappa(v)));
  return {q, -q};
}

std::pair<double, double> homoclinic_loop(const ShockData& shock, const FluidModel& model, double v) {
  return homoclinic_loop(shock, model, v, find_vbar(shock, model));
}

ProfileSolution shoot_profile(const ShockData& shock, const FluidModel& model, const ShootOptions& opts) {
  const bool backward = shock.family == ShockFamily::Lax1Backward;
  const EquilibriumReport saddle = analyze_equilibrium(shock, model, saddle_end(shock));
  const double lambda = backward ? saddle.full_eigs[0].real() : saddle.full_eigs[1].real();
  const double v_saddle = saddle_state(shock);

  // Cached F over the region the profile can visit.
  const double vbar = find_vbar(shock, model);
  const double amp = shock.amplitude;
  const double lo = std::max(model.v_min(), v_saddle - 0.1 * amp);
  const double hi = vbar + 0.1 * amp;
  auto table = std::make_shared<AntiderivativeTable>(
      [&shock, &model](double z) { return f_profile(shock, model, z); }, v_saddle, lo, hi);

  ShootProblem problem;
  problem.field = [&shock, &model](PlanarState x) { return rhs_full(shock, model, x); };
  problem.reverse = backward;
  problem.seed = PlanarState{v_saddle, 0.0} + opts.seed_offset * PlanarState{1.0, lambda};
  problem.target = PlanarState{interior_state(shock), 0.0};
  problem.energy = [table, &model](PlanarState x) {
    return (*table)(x.x) + 0.5 * model.kappa(x.x) * x.q * x.q;
  };
  const double s = shock.speed, a = shock.a_const;
  problem.conjugate = [s, a](double v) { return -s * v + a; };
  problem.x_floor = model.v_min();
  return shoot(problem, opts, Frame::Lagrangian);
}

DissipationCheck dissipation_identity_residual(const ProfileSolution& solution,
                                               const ShockData& shock, const FluidModel& model) {
  return dissipation_check(
      solution, [&](double v, double q) { return dissipation_rate(shock, model, v, q); },
      shock.speed < 0.0 ? 1 : -1);
}

ProfileDerivatives profile_derivatives(const ShockData& shock, const FluidModel& model, double v,
                                       double q) {
  const double s = shock.speed;
  const double k0 = model.kappa(v), k1 = model.kappa(v, 1), k2 = model.kappa(v, 2);
  const double m0 = model.mu(v), m1 = model.mu(v, 1);
  const double f0 = f_profile(shock, model, v), f1 = f_prime(shock, model, v);
  // V'' = G(V, Q) with G = -N / kappa, N = f + s mu Q / V + kappa' Q^2 / 2.
  const double N = f0 + s * m0 * q / v + 0.5 * k1 * q * q;
  const double G = -N / k0;
  const double N_v = f1 + s * q * (m1 / v - m0 / (v * v)) + 0.5 * k2 * q * q;
  const double N_q = s * m0 / v + k1 * q;
  const double G_v = -N_v / k0 + N * k1 / (k0 * k0);
  const double G_q = -N_q / k0;
  return {q, G, G_v * q + G_q * G};
}

SmallAmplitudeTable small_amplitude_report(const FluidModel& model, double v_minus,
                                           const std::vector<double>& epsilons,
                                           const ShootOptions& opts, bool parallel) {
  auto run_row = [&model, v_minus, opts](double eps) {
    SmallAmplitudeRow row;
    row.epsilon = eps;
    row.v_plus = v_minus - eps;
    try {
      const ShockData shock = build_shock(model, v_minus, row.v_plus, 0.0, ShockFamily::Lax1Backward);
      const ProfileSolution sol = shoot_profile(shock, model, opts);
      for (std::size_t i = 0; i < sol.size(); ++i) {
        const ProfileDerivatives d = profile_derivatives(shock, model, sol.v_samples[i], sol.q_samples[i]);
        row.max_d1 = std::max(row.max_d1, std::abs(d.d1));
        row.max_d2 = std::max(row.max_d2, std::abs(d.d2));
        row.max_d3 = std::max(row.max_d3, std::abs(d.d3));
      }
      row.ratio2 = row.max_d2 / row.max_d1;
      row.ratio3 = row.max_d3 / row.max_d1;
      row.converged = sol.converged;
      row.monotone = sol.monotone;
      row.sign_changes = sol.sign_changes;
      if (!sol.converged) row.error = "profile did not converge";
    } catch (const Error& e) {
      row.error = e.what();
    }
    return row;
  };

  SmallAmplitudeTable table;
  if (parallel) {
    std::vector<std::future<SmallAmplitudeRow>> jobs;
    for (double eps : epsilons) jobs.push_back(std::async(std::launch::async, run_row, eps));
    for (auto& job : jobs) table.rows.push_back(job.get());
  } else {
    for (double eps : epsilons) table.rows.push_back(run_row(eps));
  }

  std::vector<double> le, l1, l2, l3;
  table.all_monotone = !table.rows.empty();
  for (const auto& row : table.rows) {
    table.all_monotone = table.all_monotone && row.error.empty() && row.monotone;
    if (!row.error.empty()) continue;
    le.push_back(std::log(row.epsilon));
    l1.push_back(std::log(row.max_d1));
    l2.push_back(std::log(row.ratio2));
    l3.push_back(std::log(row.ratio3));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.slope_d1 = le.size() >= 2 ? fit_slope(le, l1) : nan;
  table.slope_ratio2 = le.size() >= 2 ? fit_slope(le, l2) : nan;
  table.slope_ratio3 = le.size() >= 2 ? fit_slope(le, l3) : nan;
  return table;
}

}  // namespace nsk
