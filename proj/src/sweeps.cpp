#include "levsim/sweeps.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>

#include <omp.h>

#include "levsim/error.hpp"

namespace levsim {

int sweep_threads() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("SIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = std::min<int>(n, static_cast<int>(v));
  }
  return std::max(1, n);
}

namespace {

std::string status_of(const std::exception& e) {
  if (const auto* s = dynamic_cast<const SimError*>(&e)) return std::string(to_string(s->code()));
  return "Error";
}

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// result is independent of scheduling.
template <typename F>
void parallel_rows(std::size_t n, F&& body) {
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) num_threads(sweep_threads())
  for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace

SpectrumTable spectrum_sweep(const StateSpaceModel& m, std::span<const double> omega_grid,
                             SpectrumForm form) {
  for (std::size_t i = 1; i < omega_grid.size(); ++i)
    if (!(omega_grid[i] > omega_grid[i - 1]))
      throw SimError(ErrorCode::InvalidArgument, "frequency grid must be strictly increasing");
  SpectrumTable out(omega_grid.size());
  std::vector<std::exception_ptr> errors(omega_grid.size());
  parallel_rows(omega_grid.size(), [&](std::size_t i) {
    try {
      out[i] = spectrum_row(m, omega_grid[i], form);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<SpectrumSweepRow> spectrum_sweep_rows(const StateSpaceModel& m,
                                                  std::span<const double> omega_grid,
                                                  SpectrumForm form) {
  std::vector<SpectrumSweepRow> out(omega_grid.size());
  parallel_rows(omega_grid.size(), [&](std::size_t i) {
    try {
      out[i].row = spectrum_row(m, omega_grid[i], form);
    } catch (const std::exception& e) {
      out[i].row.omega = omega_grid[i];
      out[i].row.omega_over_kappa = omega_grid[i] / m.coeffs.kappa;
      out[i].row.unstable = !m.stable();
      out[i].status = status_of(e);
    }
  });
  return out;
}

EntanglementRow entanglement_point(const SystemConfig& cfg, double delta0_over_kappa, RingMode mode,
                                   LogBase base) {
  EntanglementRow row;
  row.delta0_over_kappa = delta0_over_kappa;
  PointResult p;
  try {
    p = evaluate_point(cfg, delta0_over_kappa, mode);
  } catch (const std::exception& e) {
    row.status = status_of(e);
    return row;
  }
  row.x_s = p.op.x_s;
  row.omega_m = p.op.omega_m;
  row.Q_used = p.Q_used;
  row.E_x = p.E_x;
  row.stable = p.model.stable();
  if (!row.stable) {
    row.status = std::string(to_string(ErrorCode::UnstableModel));
    return row;
  }
  try {
    const auto cov = lyapunov_solve(p.model);
    row.E_n = log_negativity(cov, base).E_n;
  } catch (const std::exception& e) {
    row.status = status_of(e);
  }
  return row;
}

EntanglementTable entanglement_sweep(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                     RingMode mode, LogBase base) {
  EntanglementTable out(delta0_over_kappa.size());
  parallel_rows(out.size(), [&](std::size_t i) {
    out[i] = entanglement_point(cfg, delta0_over_kappa[i], mode, base);
  });
  return out;
}

StabilityCell stability_cell(const SystemConfig& cfg, double delta0_over_kappa, double param) {
  StabilityCell cell;
  cell.delta0_over_kappa = delta0_over_kappa;
  cell.param = param;
  try {
    const auto d = derive_constants(with_detuning(cfg, delta0_over_kappa));
    const auto ops = candidate_operating_points(d, d.delta0, cfg.ring_offset);
    if (ops.empty()) throw SimError(ErrorCode::NoRootInInterval, "no admissible root");
    const auto& op = ops.front();
    const auto m = build_model(op, d);
    cell.x_s = op.x_s;
    cell.delta_eff_over_kappa = op.delta_eff / d.kappa;
    cell.S1 = m.routh.S1;
    cell.S2 = m.routh.S2;
    cell.rh = m.routh.verdict;
    cell.eigen_stable = m.eigen.stable;
    cell.max_real_over_kappa = m.eigen.max_real / d.kappa;
  } catch (const std::exception& e) {
    cell.status = status_of(e);
  }
  return cell;
}

std::vector<StabilityCell> stability_map(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                         std::span<const double> param_values, const ConfigSetter& set) {
  const std::size_t np = param_values.size();
  std::vector<StabilityCell> out(delta0_over_kappa.size() * np);
  parallel_rows(out.size(), [&](std::size_t i) {
    const double dv = delta0_over_kappa[i / np];
    const double pv = param_values[i % np];
    SystemConfig c = cfg;
    try {
      set(c, pv);
      validate(c);
    } catch (const std::exception& e) {
      out[i].delta0_over_kappa = dv;
      out[i].param = pv;
      out[i].status = status_of(e);
      return;
    }
    out[i] = stability_cell(c, dv, pv);
  });
  return out;
}

}  // namespace levsim
