#pragma once

// Subcommands of the `simulate` tool. Each writes its primary output to
// `out` (or the --out file) and progress/summary lines to `log`, and returns
// the process exit status. Module errors propagate as SimError.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "levsim/config.hpp"

namespace levsim {

struct GridFlags {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::size_t> n;
};

struct CommandOptions {
  std::filesystem::path config;
  GridFlags grid;
  std::optional<RingMode> ring_mode;
  std::optional<std::filesystem::path> svg;
  std::optional<std::filesystem::path> out;
  bool verify = false;
  // stability-map second axis
  std::string param;
  GridFlags param_grid;
  // echoed into CSV headers
  std::string command_line;
};

int cmd_steady_state(const CommandOptions& opts, std::ostream& out, std::ostream& log);
int cmd_spectrum(const CommandOptions& opts, std::ostream& out, std::ostream& log);
int cmd_entanglement(const CommandOptions& opts, std::ostream& out, std::ostream& log);
int cmd_stability_map(const CommandOptions& opts, std::ostream& out, std::ostream& log);

}  // namespace levsim
