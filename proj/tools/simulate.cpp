#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levsim/commands.hpp"
#include "levsim/csv.hpp"
#include "levsim/error.hpp"

int main(int argc, char** argv) {
  using namespace levsim;

  CLI::App app{"Levitated nanosphere / charged ring cavity simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommandOptions opts;
  std::string config, svg, out, ring_mode;

  auto common = [&](CLI::App* sub, bool grid, bool plot) {
    sub->add_option("--config", config, "Config file (key = value)")->required();
    sub->add_option("--ring-mode", ring_mode, "fixed_charge | resonant (overrides config)");
    sub->add_option("--out", out, "Write the CSV here instead of stdout (plus a .manifest.json)");
    if (grid) {
      sub->add_option("--grid-min", opts.grid.min, "Grid start (units of kappa)");
      sub->add_option("--grid-max", opts.grid.max, "Grid end (units of kappa)");
      sub->add_option("--grid-n", opts.grid.n, "Grid points")->check(CLI::PositiveNumber);
    }
    if (plot) sub->add_option("--svg", svg, "Also write an SVG plot");
  };

  auto* steady = app.add_subcommand("steady-state", "Derived constants and the operating point");
  common(steady, false, false);
  steady->add_flag("--verify", opts.verify, "Cross-check x_s with the mean-field integrator");

  auto* spectrum = app.add_subcommand("spectrum", "Output quadrature spectra vs omega/kappa");
  common(spectrum, true, true);

  auto* ent = app.add_subcommand("entanglement", "Logarithmic negativity vs delta0/kappa");
  common(ent, true, true);

  auto* map = app.add_subcommand("stability-map", "Stability verdicts over delta0/kappa and one config key");
  common(map, true, false);
  map->add_option("--param", opts.param, "Numeric config key for the second axis");
  map->add_option("--param-min", opts.param_grid.min, "Second-axis start (config units)");
  map->add_option("--param-max", opts.param_grid.max, "Second-axis end (config units)");
  map->add_option("--param-n", opts.param_grid.n, "Second-axis points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  for (int i = 0; i < argc; ++i) {
    if (i) opts.command_line += ' ';
    opts.command_line += i == 0 ? std::string("simulate") : std::string(argv[i]);
  }
  opts.config = config;
  if (!svg.empty()) opts.svg = svg;
  if (!out.empty()) opts.out = out;

  try {
    if (!ring_mode.empty()) opts.ring_mode = parse_ring_mode(ring_mode);
    if (*steady) return cmd_steady_state(opts, std::cout, std::cerr);
    if (*spectrum) return cmd_spectrum(opts, std::cout, std::cerr);
    if (*ent) return cmd_entanglement(opts, std::cout, std::cerr);
    if (*map) return cmd_stability_map(opts, std::cout, std::cerr);
  } catch (const SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
