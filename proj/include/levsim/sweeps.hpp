#pragma once

// Parameter sweeps. The default versions evaluate rows in parallel with
// OpenMP (capped by SIM_THREADS) and assemble them in grid order; the
// `reference` namespace holds plain serial loops used to check them.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levsim/entanglement.hpp"
#include "levsim/pipeline.hpp"
#include "levsim/spectra.hpp"

namespace levsim {

/// Thread count for sweeps: SIM_THREADS if set to a positive integer,
/// otherwise the OpenMP default.
int sweep_threads();

struct EntanglementRow {
  double delta0_over_kappa = 0.0;
  std::optional<double> E_n;  // absent when no stationary state exists
  bool stable = false;
  std::optional<double> x_s;
  std::optional<double> omega_m;
  std::optional<double> Q_used;
  std::optional<double> E_x;
  std::string status = "ok";  // error code name when the point failed
};

using EntanglementTable = std::vector<EntanglementRow>;

EntanglementRow entanglement_point(const SystemConfig& cfg, double delta0_over_kappa, RingMode mode,
                                   LogBase base = LogBase::natural);

/// Never throws for a single bad point; failures land in the row status.
EntanglementTable entanglement_sweep(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                     RingMode mode, LogBase base = LogBase::natural);

/// Like spectrum_sweep but records a failed row instead of throwing.
struct SpectrumSweepRow {
  SpectrumRow row;
  std::string status = "ok";
};
std::vector<SpectrumSweepRow> spectrum_sweep_rows(const StateSpaceModel& m,
                                                  std::span<const double> omega_grid,
                                                  SpectrumForm form = SpectrumForm::input_output);

struct StabilityCell {
  double delta0_over_kappa = 0.0;
  double param = 0.0;
  std::optional<double> x_s;
  std::optional<double> delta_eff_over_kappa;
  std::optional<double> S1;
  std::optional<double> S2;
  std::optional<Verdict> rh;
  std::optional<bool> eigen_stable;
  std::optional<double> max_real_over_kappa;
  std::string status = "ok";
};

/// Applies `param` = value to a config; supplied by the caller (the CLI maps
/// config keys to setters).
using ConfigSetter = std::function<void(SystemConfig&, double)>;

/// Evaluates the smallest-|x_s| root for every (Δ0/κ, param) cell, stable or
/// not, and reports both stability verdicts. Rows are Δ0-major.
std::vector<StabilityCell> stability_map(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                         std::span<const double> param_values, const ConfigSetter& set);

StabilityCell stability_cell(const SystemConfig& cfg, double delta0_over_kappa, double param);

namespace reference {

SpectrumTable spectrum_sweep(const StateSpaceModel& m, std::span<const double> omega_grid,
                             SpectrumForm form = SpectrumForm::input_output);
EntanglementTable entanglement_sweep(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                     RingMode mode, LogBase base = LogBase::natural);
std::vector<StabilityCell> stability_map(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                         std::span<const double> param_values, const ConfigSetter& set);

}  // namespace reference

}  // namespace levsim
