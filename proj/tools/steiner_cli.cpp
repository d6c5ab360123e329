#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using steiner::cli::RunConfig;
  RunConfig cfg;
  bool dump_config = false;

  CLI::App app{"Three-terminal minimal networks on the sphere and the plane"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-i,--input", cfg.input_path, "Input JSON (problem or solved network)");
  app.add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Samples per axiom check")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Axiom tolerance")->capture_default_str();
  app.add_flag("--strict-radius,!--no-strict-radius", cfg.strict_radius,
               "Reject balls with radius >= arccos(5/6)")
      ->capture_default_str();
  app.add_option("--competitors", cfg.competitors, "Competitor networks for compare")->capture_default_str();
  app.add_option("--grid", cfg.grid, "Oracle grid resolution")->capture_default_str();
  app.add_option("--format", cfg.format, "Export format")
      ->check(CLI::IsMember({"svg", "csv", "json"}))
      ->capture_default_str();
  app.add_flag("--dump-config", dump_config, "Print the resolved configuration and exit");

  app.add_subcommand("solve", "Solve for the minimal network");
  app.add_subcommand("verify", "Run the calibration axiom suite on a solved network");
  app.add_subcommand("compare", "Compare a solved network against random competitors");
  app.add_subcommand("oracle", "Brute-force grid check of the optimum");
  app.add_subcommand("export", "Render a network as SVG, CSV or JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : steiner::cli::kFailure;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  if (dump_config) {
    std::cout << cfg.to_json().dump(2) << "\n";
    return steiner::cli::kOk;
  }
  return steiner::cli::execute(cfg, std::cout);
}
