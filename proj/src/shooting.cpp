#include "nsk/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsk/errors.hpp"
#include "nsk/format.hpp"

namespace nsk {

ProfileSolution shoot(const ShootProblem& problem, const ShootOptions& opts, Frame frame) {
  if (!(opts.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (opts.max_len < 1) throw std::invalid_argument("max_len must be at least one step");

  const PlanarField field = problem.reverse ? reversed(problem.field) : problem.field;
  std::vector<PlanarState> states;
  std::vector<double> energies;
  states.push_back(problem.seed);
  energies.push_back(problem.energy(problem.seed));

  PlanarState state = problem.seed;
  double dist = distance(state, problem.target);
  bool converged = dist <= opts.tol;
  for (long n = 0; n < opts.max_len && !converged; ++n) {
    state = step(field, state, opts.step, opts.integrator);
    if (!std::isfinite(state.x) || !std::isfinite(state.q) || state.x <= problem.x_floor) {
      std::ostringstream msg;
      msg << "trajectory left the domain at step " << n + 1 << ": (" << state.x << ", " << state.q
          << "), floor " << problem.x_floor;
      throw DomainError(msg.str());
    }
    const double h = problem.energy(state);
    if (h > kEscapeTolerance) {
      std::ostringstream msg;
      msg << "trajectory escaped the invariant region at step " << n + 1 << ": H = " << h
          << " at (" << state.x << ", " << state.q << ")";
      throw EscapeError(msg.str());
    }
    states.push_back(state);
    energies.push_back(h);
    dist = distance(state, problem.target);
    converged = dist <= opts.tol;
  }

  const std::size_t n = states.size();
  ProfileSolution sol;
  sol.frame = frame;
  sol.converged = converged;
  sol.terminal_distance = dist;
  sol.integrator = opts.integrator;
  sol.step = opts.step;
  sol.seed_offset = opts.seed_offset;
  sol.tol = opts.tol;
  sol.y_grid.resize(n);
  sol.v_samples.resize(n);
  sol.q_samples.resize(n);
  sol.u_samples.resize(n);
  sol.h_samples.resize(n);
  // Samples are stored by increasing y; reverse runs start at y = 0 and walk down.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = problem.reverse ? n - 1 - k : k;
    const double y = (problem.reverse ? -1.0 : 1.0) * static_cast<double>(i) * opts.step;
    sol.y_grid[k] = y;
    sol.v_samples[k] = states[i].x;
    sol.q_samples[k] = states[i].q;
    sol.u_samples[k] = problem.conjugate(states[i].x);
    sol.h_samples[k] = energies[i];
  }
  sol.max_h = *std::max_element(energies.begin(), energies.end());
  sol.sign_changes = count_sign_changes(sol.q_samples);
  sol.monotone = sol.sign_changes == 0;
  return sol;
}

int count_sign_changes(const std::vector<double>& values) {
  int changes = 0;
  int last = 0;
  for (double x : values) {
    const int sign = (x > 0.0) - (x < 0.0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

int stencil_half_width(Integrator integrator) { return integrator == Integrator::RK4 ? 2 : 1; }

std::vector<double> uniform_derivative(const std::vector<double>& values, double h,
                                       Integrator integrator) {
  const std::size_t n = values.size();
  std::vector<double> d(n, 0.0);
  const std::size_t w = static_cast<std::size_t>(stencil_half_width(integrator));
  if (n < 2 * w + 1) return d;
  for (std::size_t i = w; i + w < n; ++i) {
    if (w == 1) {
      d[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    } else {
      d[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / (12.0 * h);
    }
  }
  return d;
}

DissipationCheck dissipation_check(const ProfileSolution& solution,
                                   const std::function<double(double, double)>& rate, int sign) {
  DissipationCheck out;
  const std::size_t n = solution.size();
  const std::size_t w = static_cast<std::size_t>(stencil_half_width(solution.integrator));
  if (n < 2 * w + 1) return out;
  const std::vector<double> dh = uniform_derivative(solution.h_samples, solution.step, solution.integrator);
  out.min_dhdy = dh[w];
  out.max_dhdy = dh[w];
  for (std::size_t i = w; i + w < n; ++i) {
    const double expected = rate(solution.v_samples[i], solution.q_samples[i]);
    out.max_residual = std::max(out.max_residual, std::abs(dh[i] - expected));
    out.min_dhdy = std::min(out.min_dhdy, dh[i]);
    out.max_dhdy = std::max(out.max_dhdy, dh[i]);
  }
  out.sign_certified = sign > 0 ? out.min_dhdy >= -1e-8 : out.max_dhdy <= 1e-8;
  return out;
}

std::string profile_csv(const ProfileSolution& solution, const std::vector<std::string>& columns) {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (std::size_t i = 0; i < solution.size(); ++i) {
    append_number(out, solution.y_grid[i]);
    out += ',';
    append_number(out, solution.v_samples[i]);
    out += ',';
    append_number(out, solution.q_samples[i]);
    out += ',';
    append_number(out, solution.u_samples[i]);
    out += ',';
    append_number(out, solution.h_samples[i]);
    out += '\n';
  }
  return out;
}

}  // namespace nsk
