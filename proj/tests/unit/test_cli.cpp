#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "nsk/errors.hpp"
#include "nsk/profile.hpp"
#include "scenario.hpp"

using namespace nsk;
using namespace nsk::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kScenarios = NSK_SCENARIO_DIR;

json numexample_doc() {
  return json::parse(R"({
    "model": {
      "pressure": {"coefficient": 1.0, "exponent": -1.6666666666666667},
      "viscosity": {"coefficient": 1.2, "exponent": -2.0},
      "capillarity": {"coefficient": 10.0, "exponent": -7.0}
    },
    "states": {"v_minus": 1.5, "v_plus": 1.0}
  })");
}

fs::path fresh_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  const fs::path dir = fs::temp_directory_path() / ("nsk_cli_" + tag + "_" + std::to_string(rng()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& command, const Scenario& sc, const fs::path& dir, std::string* printed = nullptr,
        OutputFormat format = OutputFormat::Csv) {
  CommandOptions opts;
  opts.out_dir = dir.string();
  opts.format = format;
  std::ostringstream out;
  const int code = run_command(command, sc, opts, out);
  if (printed) *printed = out.str();
  return code;
}

int run_binary(const std::string& args) {
  const int status = std::system((std::string(NSK_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("scenario defaults are materialized") {
  const Scenario sc = parse_scenario(numexample_doc());
  CHECK(sc.frame == Frame::Lagrangian);
  CHECK(sc.first_family);
  CHECK(sc.flow_minus == 0.0);
  CHECK(sc.v_min == 1e-3);
  CHECK(sc.profile.integrator == Integrator::RK4);
  CHECK(sc.profile.step == 1e-3);
  CHECK(sc.profile.seed_offset == 1e-6);
  CHECK(sc.profile.tol == 1e-4);
  CHECK(sc.profile.max_len == 1000000);
  CHECK(sc.spectrum.n_xi == 601);
  CHECK_FALSE(sc.spectrum.lambda_probe.has_value());
  CHECK((sc.sweep.epsilons == std::vector<double>{0.02, 0.04, 0.08}));

  const json resolved = to_json(sc);
  CHECK(resolved.at("profile").at("integrator") == "rk4");
  CHECK(resolved.at("family") == "lax1");
  // the resolved form parses back to the same scenario
  CHECK(to_json(parse_scenario(resolved)) == resolved);
}

TEST_CASE("scenario validation") {
  int case_no = 0;
  const auto rejects = [&case_no](const std::function<void(json&)>& edit) {
    json doc = numexample_doc();
    edit(doc);
    const int current = ++case_no;
    CAPTURE(current);
    CHECK_THROWS_AS(parse_scenario(doc), UsageError);
  };
  rejects([](json& d) { d["extra"] = 1; });
  rejects([](json& d) { d["model"].erase("pressure"); });
  rejects([](json& d) { d["model"]["viscosity"]["coefficient"] = -1.0; });
  rejects([](json& d) { d["model"]["viscosity"]["exponent"] = "two"; });
  rejects([](json& d) { d["states"]["v_plus"] = 0.0; });
  rejects([](json& d) { d["states"]["r_minus"] = 1.0; });
  rejects([](json& d) { d["family"] = "lax3"; });
  rejects([](json& d) { d["frame"] = "spatial"; });
  rejects([](json& d) { d["profile"] = {{"integrator", "leapfrog"}}; });
  rejects([](json& d) { d["profile"] = {{"step", 0.0}}; });
  rejects([](json& d) { d["profile"] = {{"max_len", 2.5}}; });
  rejects([](json& d) { d["spectrum"] = {{"xi_lo", 3.0}, {"xi_hi", -3.0}}; });
  rejects([](json& d) { d["spectrum"] = {{"n_xi", 1}}; });
  rejects([](json& d) { d["sweep"] = {{"epsilons", {0.02, -0.1}}}; });
  rejects([](json& d) { d["sweep"] = {{"parallel", 1}}; });
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), UsageError);
}

TEST_CASE("scenarios transform across frames") {
  const Scenario euler = load_scenario(kScenarios + "/numexample_eulerian.json");
  CHECK(euler.frame == Frame::Eulerian);
  const ShockData sh = lagrangian_shock(euler);
  CHECK(sh.v_minus == doctest::Approx(1.5));
  CHECK(sh.v_plus == doctest::Approx(1.0));
  CHECK(sh.speed == doctest::Approx(-0.99119938904414322).epsilon(1e-13));
  const Scenario lag = load_scenario(kScenarios + "/numexample.json");
  const EulerianShockData es = eulerian_shock(lag);
  CHECK(es.r_minus == doctest::Approx(2.0 / 3.0));
  CHECK(es.a_const == doctest::Approx(sh.speed).epsilon(1e-13));
}

TEST_CASE("classify report") {
  const json r = classify_report(load_scenario(kScenarios + "/numexample.json"));
  CHECK(r.at("oscillation") == "Oscillatory");
  CHECK(r.at("saddle") == "plus");
  CHECK(r.at("interior") == "minus");
  CHECK(r.at("equilibria").at("plus").at("class_full") == "Saddle");
  CHECK(r.at("equilibria").at("minus").at("class_full") == "UnstableFocus");
  CHECK(r.at("m_value").get<double>() == doctest::Approx(-0.95579352470421325).epsilon(1e-12));
  CHECK(r.at("power_law_check").at("passes") == true);
  CHECK(r.contains("scenario"));

  const json viscous = classify_report(load_scenario(kScenarios + "/large_viscosity.json"));
  CHECK(viscous.at("oscillation") == "Monotone");
}

TEST_CASE("exit codes and error bodies") {
  const fs::path dir = fresh_dir("exit");
  std::string printed;
  CHECK(run("classify", load_scenario(kScenarios + "/zero_amplitude.json"), dir, &printed) == kExitLax);
  const json body = json::parse(printed);
  CHECK(body.at("error").at("type") == "OrderingError");
  CHECK(body.at("error").at("exit_code") == 2);

  CHECK(exit_code_for(LaxError("x", 0.0, 0.0)) == kExitLax);
  CHECK(exit_code_for(EscapeError("x")) == kExitNonConvergence);
  CHECK(exit_code_for(CenterRootError("x")) == kExitSpectral);
  CHECK(exit_code_for(DomainError("x")) == kExitDomain);
  CHECK(exit_code_for(UsageError("x")) == kExitUsage);
  const json lax = error_body(LaxError("thin", 1e-12, 0.5));
  CHECK(lax.at("error").at("margin_lo") == 1e-12);

  Scenario sc = load_scenario(kScenarios + "/numexample.json");
  sc.sweep.epsilons.clear();
  CHECK(run("sweep", sc, dir) == kExitUsage);

  // non-convergence still writes the partial trajectory
  sc = load_scenario(kScenarios + "/numexample.json");
  sc.profile.max_len = 500;
  CHECK(run("profile", sc, dir) == kExitNonConvergence);
  CHECK(fs::exists(dir / "profile.csv"));
  CHECK(std::count(std::istreambuf_iterator<char>(*std::make_unique<std::ifstream>(dir / "profile.csv")),
                   std::istreambuf_iterator<char>(), '\n') == 502);

  CHECK(run_binary("") == kExitUsage);
  CHECK(run_binary("frobnicate --scenario x") == kExitUsage);
  CHECK(run_binary("classify") == kExitUsage);
  CHECK(run_binary("classify --scenario /nonexistent.json") == kExitUsage);
  CHECK(run_binary("classify --format xml --scenario " + kScenarios + "/numexample.json") == kExitUsage);
  CHECK(run_binary("classify --quiet --out " + dir.string() + " --scenario " + kScenarios +
                   "/zero_amplitude.json") == kExitLax);
  CHECK(run_binary("classify --quiet --out " + dir.string() + " --scenario " + kScenarios +
                   "/numexample.json") == kExitOk);
  CHECK(fs::exists(dir / "classify.json"));
  fs::remove_all(dir);
}

TEST_CASE("profile command") {
  const fs::path dir = fresh_dir("profile");
  const Scenario sc = load_scenario(kScenarios + "/numexample.json");
  std::string printed;
  REQUIRE(run("profile", sc, dir, &printed) == kExitOk);
  const json summary = json::parse(printed);
  CHECK(summary.at("profile").at("converged") == true);
  CHECK(summary.at("profile").at("sign_changes").get<int>() >= 2);
  CHECK(summary.at("first_integral_residual").get<double>() <= 1e-10);
  CHECK(summary.at("scenario") == to_json(sc));
  CHECK(json::parse(slurp(dir / "profile.json")) == summary);

  std::istringstream csv(slurp(dir / "profile.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "y,V,Q,U,H");
  double v_lo = 1e300, v_hi = -1e300, last_y = -1e300;
  while (std::getline(csv, line)) {
    double y, v;
    char comma;
    std::istringstream row(line);
    row >> y >> comma >> v;
    CHECK(y > last_y);
    last_y = y;
    v_lo = std::min(v_lo, v);
    v_hi = std::max(v_hi, v);
  }
  CHECK(v_lo == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(v_hi > 1.5);  // overshoot of the oscillatory tail
  CHECK(v_hi < 1.8);

  const fs::path svg = fresh_dir("svg");
  REQUIRE(run("profile", sc, svg, nullptr, OutputFormat::Svg) == kExitOk);
  CHECK(slurp(svg / "profile_phase.svg").rfind("<svg", 0) == 0);
  CHECK(fs::exists(svg / "profile_v.svg"));
  const fs::path js = fresh_dir("json");
  REQUIRE(run("profile", sc, js, nullptr, OutputFormat::Json) == kExitOk);
  CHECK(fs::exists(js / "profile.json"));
  CHECK_FALSE(fs::exists(js / "profile.csv"));
  for (const auto& d : {dir, svg, js}) fs::remove_all(d);
}

TEST_CASE("coarse Euler and fine RK4 profiles reach the same end states") {
  const Scenario coarse = load_scenario(kScenarios + "/profile_euler_coarse.json");
  const Scenario fine = load_scenario(kScenarios + "/numexample.json");
  const ShockData sh = lagrangian_shock(fine);
  const FluidModel m = lagrangian_model(fine);
  const ProfileSolution a = shoot_profile(sh, m, coarse.profile);
  const ProfileSolution b = shoot_profile(sh, m, fine.profile);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  const double tol = fine.profile.tol;
  CHECK(std::hypot(a.v_samples.front() - b.v_samples.front(), a.q_samples.front() - b.q_samples.front()) <= 10 * tol);
  CHECK(std::hypot(a.v_samples.back() - b.v_samples.back(), a.q_samples.back() - b.q_samples.back()) <= 10 * tol);
}

TEST_CASE("spectrum command") {
  const fs::path dir = fresh_dir("spectrum");
  std::string printed;
  REQUIRE(run("spectrum", load_scenario(kScenarios + "/numexample.json"), dir, &printed) == kExitOk);
  const json summary = json::parse(printed);
  CHECK(summary.at("max_re").get<double>() <= 1e-12);
  CHECK(summary.at("lambda_probe").get<double>() == doctest::Approx(100.0 * (1.0 + 0.99119938904414322)));
  CHECK(summary.at("scenario").at("spectrum").at("lambda_probe").get<double>() ==
        summary.at("lambda_probe").get<double>());
  for (const char* e : {"minus", "plus"}) {
    const json& s = summary.at("splitting").at(e);
    CHECK(s.at("n_stable") == 2);
    CHECK(s.at("n_unstable") == 2);
    CHECK(s.at("n_center") == 0);
  }
  const std::string csv = slurp(dir / "spectrum.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 602);
  CHECK(csv.find("\n0,0,0,0,0,0,0,0,0\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep and Eulerian profile commands") {
  const fs::path dir = fresh_dir("sweep");
  std::string printed;
  REQUIRE(run("sweep", load_scenario(kScenarios + "/sweep.json"), dir, &printed) == kExitOk);
  const json summary = json::parse(printed);
  CHECK(summary.at("all_monotone") == true);
  CHECK(summary.at("rows").size() == 3);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("epsilon,v_plus,max_d1,max_d2,max_d3,ratio2,ratio3,converged,monotone,sign_changes,error\n", 0) == 0);

  REQUIRE(run("eulerian-profile", load_scenario(kScenarios + "/numexample_eulerian.json"), dir, &printed) == kExitOk);
  const json e = json::parse(printed);
  CHECK(e.at("profile").at("converged") == true);
  CHECK(e.at("oscillation") == "Oscillatory");
  CHECK(slurp(dir / "eulerian_profile.csv").rfind("y,R,Q,J,H\n", 0) == 0);
  fs::remove_all(dir);
}
