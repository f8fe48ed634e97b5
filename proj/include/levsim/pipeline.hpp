#pragma once

// Config → operating point → linear model, for one detuning, in either
// ring mode.

#include <optional>
#include <string>
#include <string_view>

#include "levsim/linear_dynamics.hpp"
#include "levsim/model.hpp"
#include "levsim/steady_state.hpp"

namespace levsim {

/// fixed_charge keeps the configured ring; resonant re-solves Q per detuning
/// so that ω_m = Δ(x_s).
enum class RingMode { fixed_charge, resonant };

std::string_view to_string(RingMode m);
RingMode parse_ring_mode(std::string_view s);

struct PointResult {
  DerivedParams derived;  // ring fields reflect Q_used
  OperatingPoint op;
  StateSpaceModel model;
  double Q_used = 0.0;  // C
  double E_x = 0.0;     // on-axis field at x = 0 for Q_used, V/m
};

/// Replaces the configured detuning with Δ0 = delta0_over_kappa·κ.
SystemConfig with_detuning(const SystemConfig& cfg, double delta0_over_kappa);

/// Full pipeline for one point. Throws the first module error encountered.
PointResult evaluate_point(const SystemConfig& cfg, double delta0_over_kappa, RingMode mode,
                           const SolveOptions& opts = {});

/// True when the operating point decouples mechanics from light (q = 0 or C0 = 0).
bool is_decoupled(const SystemConfig& cfg);

}  // namespace levsim
