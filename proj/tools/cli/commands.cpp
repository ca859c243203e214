#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "nsk/equilibria.hpp"
#include "nsk/errors.hpp"
#include "nsk/eulerian.hpp"
#include "nsk/format.hpp"
#include "nsk/profile.hpp"
#include "nsk/spectrum.hpp"
#include "svg.hpp"

namespace nsk::cli {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json equilibrium_json(const EquilibriumReport& r) {
  json j;
  j["end_state"] = to_string(r.which);
  j["v_star"] = r.v_star;
  j["f_prime"] = r.f_prime;
  j["discriminant"] = r.discriminant;
  j["full_eigs"] = {complex_json(r.full_eigs[0]), complex_json(r.full_eigs[1])};
  j["aux_eigs"] = {complex_json(r.aux_eigs[0]), complex_json(r.aux_eigs[1])};
  j["full_eigvecs"] = json::array();
  j["aux_eigvecs"] = json::array();
  for (int i = 0; i < 2; ++i) {
    j["full_eigvecs"].push_back({complex_json(r.full_eigvecs[i][0]), complex_json(r.full_eigvecs[i][1])});
    j["aux_eigvecs"].push_back({complex_json(r.aux_eigvecs[i][0]), complex_json(r.aux_eigvecs[i][1])});
  }
  j["class_full"] = to_string(r.class_full);
  j["class_aux"] = to_string(r.class_aux);
  j["eta_value"] = r.eta_value;
  j["osc_threshold"] = r.osc_threshold;
  j["borderline"] = r.borderline;
  j["eigen_residual"] = r.eigen_residual;
  if (r.class_full == FullClass::Saddle) {
    j["interlacing_margin"] = r.interlacing_margin;
    j["interlacing_certified"] = r.interlacing_certified;
  }
  return j;
}

json shock_json(const ShockData& sh, const FluidModel& model) {
  return {{"v_minus", sh.v_minus},
          {"v_plus", sh.v_plus},
          {"u_minus", sh.u_minus},
          {"u_plus", sh.u_plus},
          {"speed", sh.speed},
          {"family", to_string(sh.family)},
          {"a_const", sh.a_const},
          {"b_const", sh.b_const},
          {"c_const", sh.c_const},
          {"amplitude", sh.amplitude},
          {"lax_margin_lo", sh.lax_margin_lo},
          {"lax_margin_hi", sh.lax_margin_hi},
          {"rh_residual", shock_residuals(sh, model).max()}};
}

json eulerian_shock_json(const EulerianShockData& es, const FluidModel& model) {
  return {{"r_minus", es.r_minus},
          {"r_plus", es.r_plus},
          {"j_minus", es.j_minus},
          {"j_plus", es.j_plus},
          {"speed", es.speed},
          {"family", to_string(es.family)},
          {"a_const", es.a_const},
          {"amplitude", es.amplitude},
          {"lax_margin_lo", es.lax_margin_lo},
          {"lax_margin_hi", es.lax_margin_hi},
          {"rh_residual", eulerian_residual(es, model)}};
}

json power_law_json(const std::optional<PowerLawCheck>& pl) {
  if (!pl) return nullptr;
  return {{"gamma", pl->gamma},
          {"beta", pl->beta},
          {"closed_form", pl->closed_form},
          {"relative_error", pl->relative_error},
          {"passes", pl->passes}};
}

json splitting_json(const Splitting& sp) {
  json roots = json::array();
  for (const Complex& z : sp.roots) roots.push_back(complex_json(z));
  return {{"n_stable", sp.n_stable},   {"n_unstable", sp.n_unstable},   {"n_center", sp.n_center},
          {"roots", roots},            {"max_residual", sp.max_residual}, {"sign_pattern", sp.sign_pattern},
          {"sign_pattern_ok", sp.sign_pattern_ok}};
}

json profile_summary(const ProfileSolution& sol) {
  json j;
  j["converged"] = sol.converged;
  j["terminal_distance"] = sol.terminal_distance;
  j["sign_changes"] = sol.sign_changes;
  j["monotone"] = sol.monotone;
  j["samples"] = sol.size();
  j["integrator"] = to_string(sol.integrator);
  j["step"] = sol.step;
  j["y_range"] = {sol.y_grid.front(), sol.y_grid.back()};
  j["state_range"] = {*std::min_element(sol.v_samples.begin(), sol.v_samples.end()),
                      *std::max_element(sol.v_samples.begin(), sol.v_samples.end())};
  j["max_h"] = sol.max_h;
  j["max_h_violation"] = std::max(0.0, sol.max_h);
  return j;
}

json dissipation_json(const DissipationCheck& d) {
  return {{"max_residual", d.max_residual},
          {"min_dhdy", d.min_dhdy},
          {"max_dhdy", d.max_dhdy},
          {"sign_certified", d.sign_certified}};
}

void write_file(const CommandOptions& opts, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(opts.out_dir);
  const std::filesystem::path path = std::filesystem::path(opts.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
}

void write_json(const CommandOptions& opts, const std::string& name, const json& j) {
  write_file(opts, name, j.dump(2) + "\n");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
  return out + "\"";
}

// Phase portrait: homoclinic loop, direction field, trajectory and rest points.
std::string phase_portrait(const ProfileSolution& sol, const std::vector<std::pair<double, double>>& loop_upper,
                           const std::vector<std::pair<double, double>>& loop_lower,
                           const std::function<PlanarState(PlanarState)>& field, double saddle, double interior,
                           const std::string& title, const std::string& x_label) {
  SvgPlot plot(720, 540, title, x_label, "Q");
  std::vector<std::pair<double, double>> traj;
  traj.reserve(sol.size());
  for (std::size_t i = 0; i < sol.size(); ++i) traj.emplace_back(sol.v_samples[i], sol.q_samples[i]);
  plot.include(loop_upper);
  plot.include(loop_lower);
  plot.include(traj);
  // direction field on a coarse grid spanning the loop
  double x_lo = saddle, x_hi = saddle, q_lo = 0, q_hi = 0;
  for (const auto& pts : {loop_upper, loop_lower, traj}) {
    for (const auto& [x, q] : pts) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      q_lo = std::min(q_lo, q);
      q_hi = std::max(q_hi, q);
    }
  }
  const int nx = 22, nq = 16;
  const double dx = (x_hi - x_lo) / nx, dq = (q_hi - q_lo) / nq;
  for (int i = 0; i <= nx; ++i) {
    for (int k = 0; k <= nq; ++k) {
      const PlanarState at{x_lo + i * dx, q_lo + k * dq};
      PlanarState d;
      try {
        d = field(at);
      } catch (const Error&) {
        continue;
      }
      // normalize in plot units so every arrow has the same length
      const double ux = d.x / (dx > 0 ? dx : 1), uq = d.q / (dq > 0 ? dq : 1);
      const double norm = std::hypot(ux, uq);
      if (!(norm > 0.0) || !std::isfinite(norm)) continue;
      const double len = 0.4;
      plot.segment(at.x, at.q, at.x + len * dx * ux / norm, at.q + len * dq * uq / norm, "#9aa7b8");
    }
  }
  plot.polyline(decimate(loop_upper, 600), "#d62728", 1.2, "6,3");
  plot.polyline(decimate(loop_lower, 600), "#d62728", 1.2, "6,3");
  plot.polyline(decimate(traj, 4000), "#1f3b73", 1.6);
  plot.marker(saddle, 0.0, "#d62728");
  plot.marker(interior, 0.0, "#2ca02c");
  plot.legend("profile", "#1f3b73");
  plot.legend("homoclinic loop (H = 0)", "#d62728");
  return plot.render();
}

std::string state_plot(const ProfileSolution& sol, const std::string& title, const std::string& y_label) {
  SvgPlot plot(720, 420, title, "y", y_label);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < sol.size(); ++i) pts.emplace_back(sol.y_grid[i], sol.v_samples[i]);
  plot.polyline(decimate(pts, 4000), "#1f3b73", 1.6);
  return plot.render();
}

int cmd_classify(const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  const json report = classify_report(sc);
  write_json(opts, "classify.json", report);
  if (!opts.quiet) out << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_profile(const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  const FluidModel model = lagrangian_model(sc);
  const ShockData shock = lagrangian_shock(sc);
  const ProfileSolution sol = shoot_profile(shock, model, sc.profile);
  const bool with_csv = opts.format != OutputFormat::Json;
  if (with_csv) write_file(opts, "profile.csv", profile_csv(sol, {"y", "V", "Q", "U", "H"}));

  json summary;
  summary["command"] = "profile";
  summary["scenario"] = to_json(sc);
  summary["shock"] = shock_json(shock, model);
  summary["profile"] = profile_summary(sol);
  summary["oscillation"] = to_string(oscillation_criterion(shock, model));
  double first_integral = 0.0;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    first_integral = std::max(first_integral,
                              std::abs(sol.u_samples[i] + shock.speed * sol.v_samples[i] - shock.a_const));
  }
  summary["first_integral_residual"] = first_integral;
  summary["dissipation"] = dissipation_json(dissipation_identity_residual(sol, shock, model));
  if (with_csv) summary["csv"] = "profile.csv";

  if (opts.format == OutputFormat::Svg) {
    const double vbar = find_vbar(shock, model);
    std::vector<std::pair<double, double>> up, down;
    const double lo = saddle_state(shock);
    for (int k = 0; k <= 400; ++k) {
      const double v = lo + (vbar - lo) * k / 400.0;
      const auto [qp, qm] = homoclinic_loop(shock, model, std::min(v, vbar), vbar);
      up.emplace_back(v, qp);
      down.emplace_back(v, qm);
    }
    write_file(opts, "profile_phase.svg",
               phase_portrait(sol, up, down, [&](PlanarState x) { return rhs_full(shock, model, x); },
                              saddle_state(shock), interior_state(shock), "Profile in the (V, Q) phase plane", "V"));
    write_file(opts, "profile_v.svg", state_plot(sol, "Specific volume along the profile", "V"));
    summary["svg"] = {"profile_phase.svg", "profile_v.svg"};
  }
  write_json(opts, "profile.json", summary);
  if (!opts.quiet) out << summary.dump(2) << "\n";
  return sol.converged ? kExitOk : kExitNonConvergence;
}

int cmd_eulerian_profile(const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  const FluidModel model = eulerian_model(sc);
  const EulerianShockData es = eulerian_shock(sc);
  const ProfileSolution sol = shoot_profile_euler(es, model, sc.profile);
  const bool with_csv = opts.format != OutputFormat::Json;
  if (with_csv) write_file(opts, "eulerian_profile.csv", profile_csv(sol, {"y", "R", "Q", "J", "H"}));

  json summary;
  summary["command"] = "eulerian-profile";
  summary["scenario"] = to_json(sc);
  summary["shock"] = eulerian_shock_json(es, model);
  summary["profile"] = profile_summary(sol);
  summary["oscillation"] = to_string(oscillation_criterion_euler(es, model));
  const EndState interior = es.family == EulerianFamily::Lax1 ? EndState::Minus : EndState::Plus;
  summary["interior_equilibrium"] = equilibrium_json(analyze_equilibrium_euler(es, model, interior));
  summary["dissipation"] = dissipation_json(dissipation_identity_residual_euler(sol, es, model));
  if (with_csv) summary["csv"] = "eulerian_profile.csv";

  if (opts.format == OutputFormat::Svg) {
    const double rbar = find_rbar(es, model);
    const double hi = eulerian_saddle(es);
    std::vector<std::pair<double, double>> up, down;
    for (int k = 0; k <= 400; ++k) {
      const double r = rbar + (hi - rbar) * k / 400.0;
      const double phi = eulerian_energy(es, model, {r, 0.0});
      const double q = std::sqrt(std::max(0.0, -2.0 * phi * r / model.kappa(r)));
      up.emplace_back(r, q);
      down.emplace_back(r, -q);
    }
    write_file(opts, "eulerian_profile_phase.svg",
               phase_portrait(sol, up, down, [&](PlanarState x) { return rhs_full_euler(es, model, x); },
                              eulerian_saddle(es), eulerian_interior(es), "Profile in the (R, Q) phase plane", "R"));
    write_file(opts, "eulerian_profile_r.svg", state_plot(sol, "Density along the profile", "R"));
    summary["svg"] = {"eulerian_profile_phase.svg", "eulerian_profile_r.svg"};
  }
  write_json(opts, "eulerian_profile.json", summary);
  if (!opts.quiet) out << summary.dump(2) << "\n";
  return sol.converged ? kExitOk : kExitNonConvergence;
}

int cmd_spectrum(const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  const FluidModel model = lagrangian_model(sc);
  const ShockData shock = lagrangian_shock(sc);
  Scenario resolved = sc;
  if (!resolved.spectrum.lambda_probe) resolved.spectrum.lambda_probe = 100.0 * (1.0 + std::abs(shock.speed));
  const double probe = *resolved.spectrum.lambda_probe;

  const SpectrumReport rep =
      fredholm_borders(shock, model, sc.spectrum.xi_lo, sc.spectrum.xi_hi, sc.spectrum.n_xi);
  const bool with_csv = opts.format != OutputFormat::Json;
  if (with_csv) write_file(opts, "spectrum.csv", spectrum_csv(rep));

  json summary;
  summary["command"] = "spectrum";
  summary["scenario"] = to_json(resolved);
  summary["shock"] = shock_json(shock, model);
  summary["max_re"] = rep.max_re;
  summary["m_value"] = rep.m_value;
  summary["power_law_check"] = power_law_json(rep.power_law_check);
  if (with_csv) summary["csv"] = "spectrum.csv";
  if (opts.format == OutputFormat::Svg) {
    SvgPlot plot(720, 540, "Fredholm borders", "Re lambda", "Im lambda");
    const char* colors[2][2] = {{"#1f77b4", "#17becf"}, {"#d62728", "#ff7f0e"}};
    const char* names[2][2] = {{"minus, branch 1", "minus, branch 2"}, {"plus, branch 1", "plus, branch 2"}};
    for (int e = 0; e < 2; ++e) {
      for (int b = 0; b < 2; ++b) {
        std::vector<std::pair<double, double>> pts;
        for (const Complex& z : rep.curves[e][b]) pts.emplace_back(z.real(), z.imag());
        plot.polyline(pts, colors[e][b], 1.4);
        plot.legend(names[e][b], colors[e][b]);
      }
    }
    plot.marker(0.0, 0.0, "black", 3.0);
    write_file(opts, "spectrum.svg", plot.render());
    summary["svg"] = {"spectrum.svg"};
  }

  // The splitting runs last so that its failure still leaves the border data on disk.
  int code = kExitOk;
  summary["lambda_probe"] = probe;
  try {
    summary["splitting"] = {{"minus", splitting_json(consistent_splitting(shock, model, EndState::Minus, probe))},
                            {"plus", splitting_json(consistent_splitting(shock, model, EndState::Plus, probe))}};
  } catch (const CenterRootError& e) {
    summary["splitting"] = error_body(e);
    code = kExitSpectral;
  }
  write_json(opts, "spectrum.json", summary);
  if (!opts.quiet || code != kExitOk) out << summary.dump(2) << "\n";
  return code;
}

int cmd_sweep(const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  if (sc.sweep.epsilons.empty()) throw UsageError("sweep.epsilons is empty");
  const FluidModel model = lagrangian_model(sc);
  const SmallAmplitudeTable table =
      small_amplitude_report(model, sc.sweep.v_minus, sc.sweep.epsilons, sc.profile, sc.sweep.parallel);

  std::string csv = "epsilon,v_plus,max_d1,max_d2,max_d3,ratio2,ratio3,converged,monotone,sign_changes,error\n";
  json rows = json::array();
  for (const auto& r : table.rows) {
    for (double x : {r.epsilon, r.v_plus, r.max_d1, r.max_d2, r.max_d3, r.ratio2, r.ratio3}) {
      append_number(csv, x);
      csv += ',';
    }
    csv += std::string(r.converged ? "true" : "false") + "," + (r.monotone ? "true" : "false") + "," +
           std::to_string(r.sign_changes) + "," + csv_quote(r.error) + "\n";
    rows.push_back({{"epsilon", r.epsilon},
                    {"v_plus", r.v_plus},
                    {"max_d1", r.max_d1},
                    {"ratio2", r.ratio2},
                    {"ratio3", r.ratio3},
                    {"converged", r.converged},
                    {"monotone", r.monotone},
                    {"sign_changes", r.sign_changes},
                    {"error", r.error}});
  }
  const bool with_csv = opts.format != OutputFormat::Json;
  if (with_csv) write_file(opts, "sweep.csv", csv);

  json summary;
  summary["command"] = "sweep";
  summary["scenario"] = to_json(sc);
  summary["rows"] = rows;
  summary["slope_max_d1"] = table.slope_d1;
  summary["slope_ratio2"] = table.slope_ratio2;
  summary["slope_ratio3"] = table.slope_ratio3;
  summary["all_monotone"] = table.all_monotone;
  if (with_csv) summary["csv"] = "sweep.csv";
  if (opts.format == OutputFormat::Svg) {
    SvgPlot plot(620, 460, "Small-amplitude scaling", "log epsilon", "log value");
    std::vector<std::pair<double, double>> d1, r2;
    for (const auto& r : table.rows) {
      if (!r.error.empty()) continue;
      d1.emplace_back(std::log(r.epsilon), std::log(r.max_d1));
      r2.emplace_back(std::log(r.epsilon), std::log(r.ratio2));
    }
    plot.polyline(d1, "#1f3b73", 1.6);
    plot.polyline(r2, "#d62728", 1.6);
    for (const auto& [x, y] : d1) plot.marker(x, y, "#1f3b73");
    for (const auto& [x, y] : r2) plot.marker(x, y, "#d62728");
    plot.legend("max |V'|", "#1f3b73");
    plot.legend("max |V''| / max |V'|", "#d62728");
    write_file(opts, "sweep.svg", plot.render());
    summary["svg"] = {"sweep.svg"};
  }
  write_json(opts, "sweep.json", summary);
  if (!opts.quiet) out << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  if (dynamic_cast<const OrderingError*>(&e) || dynamic_cast<const LaxError*>(&e) ||
      dynamic_cast<const DegenerateError*>(&e)) {
    return kExitLax;
  }
  if (dynamic_cast<const EscapeError*>(&e) || dynamic_cast<const BracketError*>(&e) ||
      dynamic_cast<const QuadratureError*>(&e)) {
    return kExitNonConvergence;
  }
  if (dynamic_cast<const CenterRootError*>(&e)) return kExitSpectral;
  if (dynamic_cast<const Error*>(&e)) return kExitDomain;  // domain, range, frame, order, denominators
  return kExitUsage;
}

json error_body(const std::exception& e) {
  std::string type = "Error";
  if (dynamic_cast<const UsageError*>(&e)) type = "UsageError";
  else if (dynamic_cast<const std::invalid_argument*>(&e)) type = "UsageError";
  else if (dynamic_cast<const OrderingError*>(&e)) type = "OrderingError";
  else if (dynamic_cast<const LaxError*>(&e)) type = "LaxError";
  else if (dynamic_cast<const DegenerateError*>(&e)) type = "DegenerateError";
  else if (dynamic_cast<const EscapeError*>(&e)) type = "EscapeError";
  else if (dynamic_cast<const BracketError*>(&e)) type = "BracketError";
  else if (dynamic_cast<const QuadratureError*>(&e)) type = "QuadratureError";
  else if (dynamic_cast<const CenterRootError*>(&e)) type = "CenterRootError";
  else if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
  else if (dynamic_cast<const RangeError*>(&e)) type = "RangeError";
  else if (dynamic_cast<const FrameError*>(&e)) type = "FrameError";
  else if (dynamic_cast<const OrderError*>(&e)) type = "OrderError";
  else if (dynamic_cast<const SmallDenominatorError*>(&e)) type = "SmallDenominatorError";
  json body = {{"type", type}, {"message", e.what()}, {"exit_code", exit_code_for(e)}};
  if (const auto* lax = dynamic_cast<const LaxError*>(&e)) {
    body["margin_lo"] = lax->margin_lo();
    body["margin_hi"] = lax->margin_hi();
  }
  return {{"error", body}};
}

json classify_report(const Scenario& sc) {
  const FluidModel model = lagrangian_model(sc);
  const ShockData shock = lagrangian_shock(sc);
  json report;
  report["command"] = "classify";
  report["scenario"] = to_json(sc);
  report["shock"] = shock_json(shock, model);
  report["equilibria"] = {{"minus", equilibrium_json(analyze_equilibrium(shock, model, EndState::Minus))},
                          {"plus", equilibrium_json(analyze_equilibrium(shock, model, EndState::Plus))}};
  report["saddle"] = to_string(saddle_end(shock));
  report["interior"] = to_string(interior_end(shock));
  report["oscillation"] = to_string(oscillation_criterion(shock, model));
  report["m_value"] = point_condition_m(model, shock.v_minus);
  report["power_law_check"] = power_law_json(power_law_check(model, shock.v_minus));
  return report;
}

int run_command(const std::string& command, const Scenario& sc, const CommandOptions& opts, std::ostream& out) {
  try {
    if (command == "classify") return cmd_classify(sc, opts, out);
    if (command == "profile") return cmd_profile(sc, opts, out);
    if (command == "eulerian-profile") return cmd_eulerian_profile(sc, opts, out);
    if (command == "spectrum") return cmd_spectrum(sc, opts, out);
    if (command == "sweep") return cmd_sweep(sc, opts, out);
    throw UsageError("unknown command '" + command + "'");
  } catch (const std::exception& e) {
    out << error_body(e).dump(2) << "\n";
    return exit_code_for(e);
  }
}

}  // namespace nsk::cli
