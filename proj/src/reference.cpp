#include <exception>

#include "levsim/error.hpp"
#include "levsim/sweeps.hpp"

namespace levsim::reference {

SpectrumTable spectrum_sweep(const StateSpaceModel& m, std::span<const double> omega_grid,
                             SpectrumForm form) {
  SpectrumTable out;
  out.reserve(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    if (i > 0 && !(omega_grid[i] > omega_grid[i - 1]))
      throw SimError(ErrorCode::InvalidArgument, "frequency grid must be strictly increasing");
    out.push_back(spectrum_row(m, omega_grid[i], form));
  }
  return out;
}

EntanglementTable entanglement_sweep(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                     RingMode mode, LogBase base) {
  EntanglementTable out;
  for (double v : delta0_over_kappa) out.push_back(entanglement_point(cfg, v, mode, base));
  return out;
}

std::vector<StabilityCell> stability_map(const SystemConfig& cfg, std::span<const double> delta0_over_kappa,
                                         std::span<const double> param_values, const ConfigSetter& set) {
  std::vector<StabilityCell> out;
  for (double dv : delta0_over_kappa)
    for (double pv : param_values) {
      SystemConfig c = cfg;
      try {
        set(c, pv);
        validate(c);
      } catch (const SimError& e) {
        StabilityCell cell;
        cell.delta0_over_kappa = dv;
        cell.param = pv;
        cell.status = std::string(to_string(e.code()));
        out.push_back(cell);
        continue;
      }
      out.push_back(stability_cell(c, dv, pv));
    }
  return out;
}

}  // namespace levsim::reference
