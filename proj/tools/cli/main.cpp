// nsk: viscous-dispersive shock profiles and spectra from a scenario file.

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "scenario.hpp"

int main(int argc, char** argv) {
  using namespace nsk::cli;

  CLI::App app{"Viscous-dispersive shock profiles for isentropic Navier-Stokes-Korteweg fluids"};
  app.require_subcommand(1);

  std::string scenario_path;
  CommandOptions opts;
  std::string format = "csv";
  const std::map<std::string, OutputFormat> formats{
      {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"svg", OutputFormat::Svg}};

  const std::vector<std::pair<std::string, std::string>> commands{
      {"classify", "shock data, rest-point classification and oscillation verdict (JSON)"},
      {"profile", "shoot the Lagrangian profile; CSV y,V,Q,U,H and a summary"},
      {"spectrum", "Fredholm borders, consistent splitting and the point condition"},
      {"sweep", "small-amplitude scaling over sweep.epsilons"},
      {"eulerian-profile", "shoot the Eulerian-frame profile; CSV y,R,Q,J,H and a summary"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", format, "csv | json | svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}))
        ->capture_default_str();
    sub->add_flag("--quiet", opts.quiet, "do not print the summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opts.format = formats.at(format);
  const std::string command = app.get_subcommands().front()->get_name();

  Scenario sc;
  try {
    sc = load_scenario(scenario_path);
  } catch (const std::exception& e) {
    std::cout << error_body(e).dump(2) << "\n";
    return exit_code_for(e);
  }
  return run_command(command, sc, opts, std::cout);
}
