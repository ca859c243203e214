#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nsk::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw UsageError("unknown key '" + where + "." + it.key() + "'");
  }
}

const json& require_object(const json& parent, const std::string& key, const std::string& where) {
  if (!parent.contains(key)) throw UsageError("missing required key '" + where + key + "'");
  const json& v = parent.at(key);
  if (!v.is_object()) throw UsageError("'" + where + key + "' must be an object");
  return v;
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw UsageError("missing required key '" + where + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw UsageError("'" + where + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw UsageError("'" + where + key + "' must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

double positive_or(const json& obj, const std::string& key, const std::string& where, double fallback) {
  const double x = number_or(obj, key, where, fallback);
  if (!(x > 0.0)) throw UsageError("'" + where + key + "' must be positive");
  return x;
}

PowerLaw power_law(const json& model, const std::string& key) {
  const json& p = require_object(model, key, "model.");
  reject_unknown(p, "model." + key, {"coefficient", "exponent"});
  PowerLaw out;
  out.coefficient = number(p, "coefficient", "model." + key + ".");
  if (!(out.coefficient > 0.0)) throw UsageError("'model." + key + ".coefficient' must be positive");
  out.exponent = number(p, "exponent", "model." + key + ".");
  return out;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw UsageError("scenario must be a JSON object");
  reject_unknown(doc, "scenario", {"frame", "model", "states", "family", "profile", "spectrum", "sweep"});
  Scenario sc;

  const std::string frame = doc.value("frame", std::string("lagrangian"));
  if (frame == "lagrangian") sc.frame = Frame::Lagrangian;
  else if (frame == "eulerian") sc.frame = Frame::Eulerian;
  else throw UsageError("'frame' must be \"lagrangian\" or \"eulerian\"");

  const json& model = require_object(doc, "model", "");
  reject_unknown(model, "model", {"pressure", "viscosity", "capillarity", "v_min"});
  sc.pressure = power_law(model, "pressure");
  sc.viscosity = power_law(model, "viscosity");
  sc.capillarity = power_law(model, "capillarity");
  sc.v_min = positive_or(model, "v_min", "model.", 1e-3);

  const json& states = require_object(doc, "states", "");
  if (sc.frame == Frame::Lagrangian) {
    reject_unknown(states, "states", {"v_minus", "v_plus", "u_minus"});
    sc.state_minus = number(states, "v_minus", "states.");
    sc.state_plus = number(states, "v_plus", "states.");
    sc.flow_minus = number_or(states, "u_minus", "states.", 0.0);
  } else {
    reject_unknown(states, "states", {"r_minus", "r_plus", "j_minus"});
    sc.state_minus = number(states, "r_minus", "states.");
    sc.state_plus = number(states, "r_plus", "states.");
    sc.flow_minus = number_or(states, "j_minus", "states.", 0.0);
  }
  if (!(sc.state_minus > 0.0) || !(sc.state_plus > 0.0)) throw UsageError("end states must be positive");

  const std::string family = doc.value("family", std::string("lax1"));
  if (family == "lax1") sc.first_family = true;
  else if (family == "lax2") sc.first_family = false;
  else throw UsageError("'family' must be \"lax1\" or \"lax2\"");

  if (doc.contains("profile")) {
    const json& p = require_object(doc, "profile", "");
    reject_unknown(p, "profile", {"integrator", "step", "seed_offset", "tol", "max_len"});
    if (p.contains("integrator")) {
      if (!p.at("integrator").is_string()) throw UsageError("'profile.integrator' must be a string");
      try {
        sc.profile.integrator = integrator_from_string(p.at("integrator").get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("profile.integrator: ") + e.what());
      }
    }
    sc.profile.step = positive_or(p, "step", "profile.", sc.profile.step);
    sc.profile.seed_offset = number_or(p, "seed_offset", "profile.", sc.profile.seed_offset);
    if (sc.profile.seed_offset < 0.0) throw UsageError("'profile.seed_offset' must be non-negative");
    sc.profile.tol = positive_or(p, "tol", "profile.", sc.profile.tol);
    const double max_len = positive_or(p, "max_len", "profile.", static_cast<double>(sc.profile.max_len));
    if (max_len != std::floor(max_len) || max_len > 1e9) {
      throw UsageError("'profile.max_len' must be a whole number of steps <= 1e9");
    }
    sc.profile.max_len = static_cast<long>(max_len);
  }

  if (doc.contains("spectrum")) {
    const json& s = require_object(doc, "spectrum", "");
    reject_unknown(s, "spectrum", {"xi_lo", "xi_hi", "n_xi", "lambda_probe"});
    sc.spectrum.xi_lo = number_or(s, "xi_lo", "spectrum.", sc.spectrum.xi_lo);
    sc.spectrum.xi_hi = number_or(s, "xi_hi", "spectrum.", sc.spectrum.xi_hi);
    if (!(sc.spectrum.xi_lo < sc.spectrum.xi_hi)) throw UsageError("spectrum.xi_lo must be below xi_hi");
    const double n = number_or(s, "n_xi", "spectrum.", sc.spectrum.n_xi);
    if (n != std::floor(n) || n < 2 || n > 1e7) throw UsageError("'spectrum.n_xi' must be an integer >= 2");
    sc.spectrum.n_xi = static_cast<int>(n);
    if (s.contains("lambda_probe") && !s.at("lambda_probe").is_null()) {
      sc.spectrum.lambda_probe = positive_or(s, "lambda_probe", "spectrum.", 1.0);
    }
  }

  if (doc.contains("sweep")) {
    const json& w = require_object(doc, "sweep", "");
    reject_unknown(w, "sweep", {"v_minus", "epsilons", "parallel"});
    sc.sweep.v_minus = positive_or(w, "v_minus", "sweep.", sc.sweep.v_minus);
    if (w.contains("epsilons")) {
      const json& e = w.at("epsilons");
      if (!e.is_array()) throw UsageError("'sweep.epsilons' must be an array");
      sc.sweep.epsilons.clear();
      for (const json& x : e) {
        if (!x.is_number() || !(x.get<double>() > 0.0)) {
          throw UsageError("'sweep.epsilons' entries must be positive numbers");
        }
        sc.sweep.epsilons.push_back(x.get<double>());
      }
    }
    if (w.contains("parallel")) {
      if (!w.at("parallel").is_boolean()) throw UsageError("'sweep.parallel' must be a boolean");
      sc.sweep.parallel = w.at("parallel").get<bool>();
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open scenario file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& sc) {
  auto law = [](const PowerLaw& p) { return json{{"coefficient", p.coefficient}, {"exponent", p.exponent}}; };
  json doc;
  const bool lag = sc.frame == Frame::Lagrangian;
  doc["frame"] = lag ? "lagrangian" : "eulerian";
  doc["model"] = {{"pressure", law(sc.pressure)},
                  {"viscosity", law(sc.viscosity)},
                  {"capillarity", law(sc.capillarity)},
                  {"v_min", sc.v_min}};
  if (lag) {
    doc["states"] = {{"v_minus", sc.state_minus}, {"v_plus", sc.state_plus}, {"u_minus", sc.flow_minus}};
  } else {
    doc["states"] = {{"r_minus", sc.state_minus}, {"r_plus", sc.state_plus}, {"j_minus", sc.flow_minus}};
  }
  doc["family"] = sc.first_family ? "lax1" : "lax2";
  doc["profile"] = {{"integrator", to_string(sc.profile.integrator)},
                    {"step", sc.profile.step},
                    {"seed_offset", sc.profile.seed_offset},
                    {"tol", sc.profile.tol},
                    {"max_len", sc.profile.max_len}};
  doc["spectrum"] = {{"xi_lo", sc.spectrum.xi_lo},
                     {"xi_hi", sc.spectrum.xi_hi},
                     {"n_xi", sc.spectrum.n_xi},
                     {"lambda_probe", sc.spectrum.lambda_probe ? json(*sc.spectrum.lambda_probe) : json()}};
  doc["sweep"] = {{"v_minus", sc.sweep.v_minus}, {"epsilons", sc.sweep.epsilons}, {"parallel", sc.sweep.parallel}};
  return doc;
}

FluidModel lagrangian_model(const Scenario& sc) {
  FluidModel m(sc.pressure, sc.viscosity, sc.capillarity, sc.frame, sc.v_min);
  return sc.frame == Frame::Lagrangian ? m : to_lagrangian(m);
}

FluidModel eulerian_model(const Scenario& sc) {
  FluidModel m(sc.pressure, sc.viscosity, sc.capillarity, sc.frame, sc.v_min);
  return sc.frame == Frame::Eulerian ? m : to_eulerian(m);
}

ShockData lagrangian_shock(const Scenario& sc) {
  const FluidModel m = lagrangian_model(sc);
  const ShockFamily family = sc.first_family ? ShockFamily::Lax1Backward : ShockFamily::Lax2Forward;
  if (sc.frame == Frame::Lagrangian) return build_shock(m, sc.state_minus, sc.state_plus, sc.flow_minus, family);
  return build_shock(m, 1.0 / sc.state_minus, 1.0 / sc.state_plus, sc.flow_minus / sc.state_minus, family);
}

EulerianShockData eulerian_shock(const Scenario& sc) {
  const FluidModel m = eulerian_model(sc);
  const EulerianFamily family = sc.first_family ? EulerianFamily::Lax1 : EulerianFamily::Lax2;
  if (sc.frame == Frame::Eulerian) {
    return build_eulerian_shock(m, sc.state_minus, sc.state_plus, sc.flow_minus, family);
  }
  return build_eulerian_shock(m, 1.0 / sc.state_minus, 1.0 / sc.state_plus, sc.flow_minus / sc.state_minus,
                              family);
}

}  // namespace nsk::cli
