// cranesim: scenario simulation, oracle verification and stability maps.
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace cranesim::cli;

  CLI::App app{"Boom crane simulation and swing-damping control toolkit"};
  app.require_subcommand(1);

  SimulateOptions sim_opts;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a scenario and write CSV telemetry");
  simulate_cmd->add_option("--config", sim_opts.config, "Scenario JSON file")->required();
  simulate_cmd->add_option("--out", sim_opts.out, "Output directory")->capture_default_str();

  VerifyOptions verify_opts;
  std::string mutate;
  auto* verify_cmd =
      app.add_subcommand("verify", "Compare closed-form dynamics with the Lagrangian oracle");
  verify_cmd->add_option("--states", verify_opts.states, "Number of random states")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_opts.seed, "RNG seed")->capture_default_str();
  verify_cmd->add_option("--tolerance", verify_opts.tolerance, "Relative agreement threshold")
      ->capture_default_str();
  verify_cmd->add_option("--out", verify_opts.out, "Directory for term_diff_report.csv")
      ->capture_default_str();
  verify_cmd->add_option("--mutate", mutate,
                         "Inject a defect, e.g. flip-sign:row=2,term=gravity (test hook)");

  StabilityOptions stab_opts;
  std::string stab_config;
  auto* stability_cmd = app.add_subcommand("stability", "Hurwitz map over a (beta, d) grid");
  stability_cmd->add_option("--config", stab_config, "Scenario JSON providing crane and gains");
  stability_cmd->add_option("--grid", stab_opts.grid, "beta=MIN:MAX:N,d=MIN:MAX:N")
      ->capture_default_str();
  stability_cmd->add_option("--out", stab_opts.out, "Output directory")->capture_default_str();
  stability_cmd->add_flag("--open-loop", stab_opts.open_loop, "Zero the swing-feedback gains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (*simulate_cmd) return simulate(sim_opts, std::cout, std::cerr);
    if (*verify_cmd) {
      if (!mutate.empty()) verify_opts.mutate = mutate;
      return verify(verify_opts, std::cout, std::cerr);
    }
    if (*stability_cmd) {
      if (!stab_config.empty()) stab_opts.config = stab_config;
      return stability(stab_opts, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}
