#include "levsim/pipeline.hpp"

#include <string>

#include "levsim/error.hpp"

namespace levsim {

std::string_view to_string(RingMode m) {
  return m == RingMode::resonant ? "resonant" : "fixed_charge";
}

RingMode parse_ring_mode(std::string_view s) {
  if (s == "fixed_charge") return RingMode::fixed_charge;
  if (s == "resonant") return RingMode::resonant;
  throw SimError(ErrorCode::ValidationError,
                 "ring_mode must be fixed_charge|resonant, got '" + std::string(s) + "'");
}

SystemConfig with_detuning(const SystemConfig& cfg, double delta0_over_kappa) {
  SystemConfig c = cfg;
  c.detuning = Detuning::over_kappa(delta0_over_kappa);
  return c;
}

bool is_decoupled(const SystemConfig& cfg) {
  return cfg.mcp_epsilon == 0.0 || cfg.ring_offset == 0.0 || cfg.ring.value == 0.0;
}

PointResult evaluate_point(const SystemConfig& cfg, double delta0_over_kappa, RingMode mode,
                           const SolveOptions& opts) {
  PointResult r;
  r.derived = derive_constants(with_detuning(cfg, delta0_over_kappa));
  const double c0 = cfg.ring_offset;
  const auto stable = stability_check(r.derived);

  if (mode == RingMode::fixed_charge) {
    r.op = solve_xs(r.derived, r.derived.delta0, c0, stable, opts);
  } else {
    const auto sol =
        solve_resonant_ring_charge(r.derived, r.derived.delta0, c0, r.derived.q_mcp, stable, opts);
    r.op = sol.op;
    r.derived.config.ring = RingSource::charge(sol.ring_charge);
    r.derived.ring_charge = sol.ring_charge;
    r.derived.A_q = electrostatic_spring(r.derived.config, sol.ring_charge, 0.0, false);
  }
  r.Q_used = r.derived.ring_charge;
  r.E_x = ring_field(0.0, r.derived.config, r.Q_used);
  r.model = build_model(r.op, r.derived);
  return r;
}

}  // namespace levsim
