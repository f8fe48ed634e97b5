#include "levsim/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "levsim/csv.hpp"
#include "levsim/error.hpp"
#include "levsim/mean_field.hpp"
#include "levsim/svg.hpp"
#include "levsim/sweeps.hpp"

namespace levsim {

namespace {

struct Grid {
  double min, max;
  std::size_t n;
};

Grid resolve(const GridFlags& f, double lo, double hi, std::size_t n, const char* what) {
  Grid g{f.min.value_or(lo), f.max.value_or(hi), f.n.value_or(n)};
  if (g.n == 0) throw SimError(ErrorCode::ValidationError, std::string(what) + " grid needs n >= 1");
  if (g.n > 1 && !(g.max > g.min))
    throw SimError(ErrorCode::ValidationError, std::string(what) + " grid needs max > min");
  return g;
}

RingMode ring_mode(const CommandOptions& o, const ConfigFile& cfg) {
  return o.ring_mode.value_or(cfg.options.ring_mode);
}

double config_delta0_over_kappa(const SystemConfig& cfg) {
  const auto d = derive_constants(cfg);
  return d.delta0 / d.kappa;
}

void emit(const CommandOptions& o, std::ostream& out, const std::string& text) {
  if (o.out)
    write_text_file(*o.out, text);
  else
    out << text;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void write_manifest(const CommandOptions& o, const ConfigFile& cfg, const std::string& subcommand,
                    const nlohmann::ordered_json& grids) {
  if (!o.out) return;
  nlohmann::ordered_json j;
  j["version"] = std::string(kVersion);
  j["subcommand"] = subcommand;
  j["command"] = o.command_line;
  j["config_path"] = o.config.string();
  j["config"] = canonical_config(cfg);
  j["grids"] = grids;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  outputs.push_back(o.out->string());
  if (o.svg) outputs.push_back(o.svg->string());
  j["outputs"] = outputs;
  j["timestamp"] = utc_timestamp();
  auto path = *o.out;
  path += ".manifest.json";
  write_text_file(path, j.dump(2) + "\n");
}

nlohmann::ordered_json grid_json(const Grid& g, const std::string& axis, const std::string& unit) {
  return {{"axis", axis}, {"min", g.min}, {"max", g.max}, {"n", g.n}, {"unit", unit}};
}

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

int cmd_steady_state(const CommandOptions& o, std::ostream& out, std::ostream& log) {
  const auto cfg = parse_config(o.config);
  const auto mode = ring_mode(o, cfg);
  const double dk = config_delta0_over_kappa(cfg.system);
  const auto base = derive_constants(cfg.system);
  const auto roots = candidate_operating_points(base, base.delta0, cfg.system.ring_offset);

  const auto p = evaluate_point(cfg.system, dk, mode);
  const auto& d = p.derived;
  const auto& op = p.op;
  const auto& m = p.model;
  const auto damp = d.damping(op.omega_m);

  std::vector<std::tuple<std::string, std::string, std::string>> rows;
  auto add = [&](const std::string& k, double v, const std::string& unit) {
    rows.emplace_back(k, format_number(v), unit);
  };
  auto add_text = [&](const std::string& k, const std::string& v) { rows.emplace_back(k, v, ""); };

  add_text("ring_mode", std::string(to_string(mode)));
  add("k", d.k, "1/m");
  add("omega_c", d.omega_c, "rad/s");
  add("sphere_volume", d.sphere_volume, "m^3");
  add("waist", d.waist, "m");
  add("mode_volume", d.mode_volume, "m^3");
  add("mass", d.mass, "kg");
  add("g", d.g, "rad/s");
  add("kappa", d.kappa, "rad/s");
  add("drive", d.drive, "1/s");
  add("q_mcp", d.q_mcp, "C");
  add("ring_charge", p.Q_used, "C");
  add("ring_field_at_origin", p.E_x, "V/m");
  add("A_q", d.A_q, "N/m");
  add("delta0", d.delta0, "rad/s");
  add("delta0_over_kappa", d.delta0 / d.kappa, "");
  add("gas_speed", d.gas_speed, "m/s");
  add("x_s", op.x_s, "m");
  add("x_s_over_lambda", op.x_s / cfg.system.wavelength, "");
  add("a_s", op.a_s, "");
  add("omega_m", op.omega_m, "rad/s");
  add("omega_m_over_kappa", op.omega_m / d.kappa, "");
  add("Omega_m", op.Omega_m, "rad/s");
  add("delta_eff", op.delta_eff, "rad/s");
  add("delta_eff_over_kappa", op.delta_eff / d.kappa, "");
  add("G", op.G, "rad/s");
  add("G_over_kappa", op.G / d.kappa, "");
  add("residual", op.residual, "N");
  add("residual_relative", op.residual_relative, "");
  add("gamma_ph", damp.gamma_ph, "1/s");
  add("gamma_gas", damp.gamma_gas, "1/s");
  add("gamma", damp.gamma, "1/s");
  add("Gamma", damp.Gamma_diff, "1/s");
  add("S1", m.routh.S1, "");
  add("S2", m.routh.S2, "");
  add_text("routh_hurwitz", std::string(to_string(m.routh.verdict)));
  add("max_real_eigenvalue_over_kappa", m.eigen.max_real / d.kappa, "");
  add_text("stable", m.stable() ? "true" : "false");
  add("roots_found", static_cast<double>(roots.size()), "");
  if (mode == RingMode::fixed_charge) {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const bool st = build_model(roots[i], base).stable();
      add("root_" + std::to_string(i) + "_x_s_over_lambda", roots[i].x_s / cfg.system.wavelength, "");
      add_text("root_" + std::to_string(i) + "_stable", st ? "true" : "false");
    }
  }

  int status = 0;
  if (o.verify) {
    try {
      MeanFieldOptions mopts;
      mopts.damping_override = oracle_damping(d);
      const double x0 = op.x_s + 0.01 * cfg.system.wavelength;
      const auto mf = integrate_mean_field(d, d.delta0, cfg.system.ring_offset, adiabatic_state(d, d.delta0, x0),
                                           2e4 / d.kappa, 0.0, mopts);
      const double dx = std::abs(mf.x_mean - op.x_s) / cfg.system.wavelength;
      add("verify_mean_field_x", mf.x_mean, "m");
      add("verify_abs_dx_over_lambda", dx, "");
      add("verify_mean_field_abs_a", mf.abs_a_mean, "");
      add("verify_time", mf.t_end, "s");
      add("verify_damping", mf.gamma, "1/s");
      const bool ok = dx < 1e-4;
      add_text("verify", ok ? "agree" : "disagree");
      if (!ok) status = exit_code_for(ErrorCode::NotConverged);
    } catch (const SimError& e) {
      add_text("verify", std::string(to_string(e.code())));
      status = exit_code_for(e.code());
    }
  }
  const bool decoupled = is_decoupled(d.config) || op.G == 0.0;
  if (decoupled) add_text("note", "decoupled: output is shot-noise flat");

  std::size_t width = 0;
  for (const auto& [k, v, u] : rows) width = std::max(width, k.size());
  for (const auto& [k, v, u] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v;
    if (!u.empty()) out << " " << u;
    out << "\n";
  }

  if (o.out) {
    std::string csv = csv_preamble(canonical_config(cfg), o.command_line) + "quantity,value,unit\n";
    for (const auto& [k, v, u] : rows) csv += k + "," + v + "," + u + "\n";
    write_text_file(*o.out, csv);
    write_manifest(o, cfg, "steady-state", nlohmann::ordered_json::array());
    log << "steady-state: wrote " << o.out->string() << "\n";
  }
  return status;
}

int cmd_spectrum(const CommandOptions& o, std::ostream& out, std::ostream& log) {
  const auto cfg = parse_config(o.config);
  const auto mode = ring_mode(o, cfg);
  const auto g = resolve(o.grid, -3.0, 3.0, 3001, "frequency");
  const double dk = config_delta0_over_kappa(cfg.system);

  StateSpaceModel model;
  try {
    model = evaluate_point(cfg.system, dk, mode).model;
  } catch (const SimError& e) {
    if (e.code() != ErrorCode::AllRootsUnstable) throw;
    // Evaluate anyway at the innermost root; rows carry the unstable flag.
    const auto d = derive_constants(cfg.system);
    const auto ops = candidate_operating_points(d, d.delta0, cfg.system.ring_offset);
    model = build_model(ops.front(), d);
    log << "warning: no stable root; spectrum evaluated at x_s = " << format_number(ops.front().x_s)
        << " m and flagged unstable\n";
  }
  const double kappa = model.coeffs.kappa;
  const auto grid = linear_grid(g.min, g.max, g.n, kappa);
  const auto rows = spectrum_sweep_rows(model, grid, cfg.options.spectrum_form);

  std::string csv = csv_preamble(canonical_config(cfg), o.command_line);
  csv += "omega_over_kappa,S_XX,S_YY,S_XX_norm,S_YY_norm,unstable\n";
  std::size_t failed = 0;
  for (const auto& r : rows) {
    const bool ok = r.status == "ok";
    if (!ok) ++failed;
    csv += format_number(r.row.omega_over_kappa) + ",";
    if (ok)
      csv += format_number(r.row.S_XX) + "," + format_number(r.row.S_YY) + "," + format_number(r.row.S_XX_norm) +
             "," + format_number(r.row.S_YY_norm);
    else
      csv += ",,,";
    csv += std::string(",") + flag(r.row.unstable) + "\n";
  }
  emit(o, out, csv);

  if (o.svg) {
    Chart c;
    c.title = "Output quadrature spectra";
    c.x_label = "omega / kappa";
    c.y_label = "S(omega)";
    c.baseline = kSpectrumBaseline;
    Series sx{"S_XX", "#1f77b4", {}, {}}, sy{"S_YY", "#d62728", {}, {}};
    for (const auto& r : rows) {
      const double nan = std::nan("");
      const bool ok = r.status == "ok";
      sx.x.push_back(r.row.omega_over_kappa);
      sy.x.push_back(r.row.omega_over_kappa);
      sx.y.push_back(ok ? r.row.S_XX : nan);
      sy.y.push_back(ok ? r.row.S_YY : nan);
    }
    c.series = {sx, sy};
    write_text_file(*o.svg, render_svg(c));
  }
  write_manifest(o, cfg, "spectrum", nlohmann::ordered_json::array({grid_json(g, "omega", "kappa")}));

  log << "spectrum: " << rows.size() << " rows, " << failed << " failed"
      << (model.stable() ? "" : ", model unstable") << "\n";
  if (!rows.empty() && failed == rows.size()) return exit_code_for(ErrorCode::NonFiniteResult);
  return 0;
}

int cmd_entanglement(const CommandOptions& o, std::ostream& out, std::ostream& log) {
  const auto cfg = parse_config(o.config);
  const auto mode = ring_mode(o, cfg);
  const auto g = resolve(o.grid, 0.01, 1.2, 200, "detuning");
  const auto grid = linear_grid(g.min, g.max, g.n);
  const auto rows = entanglement_sweep(cfg.system, grid, mode, cfg.options.log_base);

  std::string csv = csv_preamble(canonical_config(cfg), o.command_line);
  csv += "delta0_over_kappa,E_n,stable,x_s,omega_m,Q_used,E_x,status\n";
  std::size_t with_value = 0;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.E_n) {
      ++with_value;
      if (!best || *r.E_n > *rows[*best].E_n) best = i;
    }
    csv += format_number(r.delta0_over_kappa) + "," + format_optional(r.E_n) + "," + flag(r.stable) + "," +
           format_optional(r.x_s) + "," + format_optional(r.omega_m) + "," + format_optional(r.Q_used) + "," +
           format_optional(r.E_x) + "," + r.status + "\n";
  }
  emit(o, out, csv);

  if (o.svg) {
    Chart c;
    c.title = std::string("Logarithmic negativity (") + std::string(to_string(mode)) + ")";
    c.x_label = "delta0 / kappa";
    c.y_label = "E_n";
    Series s{"E_n", "#1f77b4", {}, {}};
    for (const auto& r : rows) {
      s.x.push_back(r.delta0_over_kappa);
      s.y.push_back(r.E_n.value_or(std::nan("")));
    }
    c.series = {s};
    write_text_file(*o.svg, render_svg(c));
  }
  write_manifest(o, cfg, "entanglement", nlohmann::ordered_json::array({grid_json(g, "delta0", "kappa")}));

  log << "entanglement: " << rows.size() << " rows, " << with_value << " with a stationary state";
  if (best) log << ", max E_n = " << format_number(*rows[*best].E_n) << " at delta0/kappa = "
                << format_number(rows[*best].delta0_over_kappa);
  log << "\n";
  if (!rows.empty() && with_value == 0) return exit_code_for(ErrorCode::UnstableModel);
  return 0;
}

int cmd_stability_map(const CommandOptions& o, std::ostream& out, std::ostream& log) {
  const auto cfg = parse_config(o.config);
  const auto g = resolve(o.grid, -1.5, 1.5, 61, "detuning");
  const auto dgrid = linear_grid(g.min, g.max, g.n);

  std::vector<double> pgrid{0.0};
  ConfigSetter set = [](SystemConfig&, double) {};
  std::optional<Grid> pg;
  if (!o.param.empty()) {
    const std::string key = o.param;
    const double current = get_numeric_key(cfg.system, key);
    pg = resolve(o.param_grid, 0.5 * current, 1.5 * current, 21, "parameter");
    if (pg->n > 1 && pg->min == pg->max)
      throw SimError(ErrorCode::ValidationError, "parameter grid needs max > min");
    pgrid = linear_grid(pg->min, pg->max, pg->n);
    set = [key](SystemConfig& c, double v) { set_numeric_key(c, key, v); };
  } else if (o.param_grid.min || o.param_grid.max || o.param_grid.n) {
    throw SimError(ErrorCode::ValidationError, "--param-min/--param-max/--param-n need --param");
  }
  const auto cells = stability_map(cfg.system, dgrid, pgrid, set);

  std::string csv = csv_preamble(canonical_config(cfg), o.command_line);
  csv += "delta0_over_kappa,";
  if (!o.param.empty()) csv += o.param + ",";
  csv += "x_s,delta_eff_over_kappa,S1,S2,rh_verdict,eigen_verdict,max_real_over_kappa,status\n";
  std::size_t failed = 0, disagree = 0;
  for (const auto& c : cells) {
    if (c.status != "ok") ++failed;
    const std::string eig = c.eigen_stable ? (*c.eigen_stable ? "stable" : "unstable") : "";
    const std::string rh = c.rh ? std::string(to_string(*c.rh)) : "";
    if (c.rh && c.eigen_stable && *c.rh != Verdict::marginal && (*c.rh == Verdict::stable) != *c.eigen_stable)
      ++disagree;
    csv += format_number(c.delta0_over_kappa) + ",";
    if (!o.param.empty()) csv += format_number(c.param) + ",";
    csv += format_optional(c.x_s) + "," + format_optional(c.delta_eff_over_kappa) + "," + format_optional(c.S1) +
           "," + format_optional(c.S2) + "," + rh + "," + eig + "," + format_optional(c.max_real_over_kappa) + "," +
           c.status + "\n";
  }
  emit(o, out, csv);

  auto grids = nlohmann::ordered_json::array({grid_json(g, "delta0", "kappa")});
  if (pg) grids.push_back(grid_json(*pg, o.param, "config units"));
  write_manifest(o, cfg, "stability-map", grids);

  log << "stability-map: " << cells.size() << " cells, " << failed << " failed, " << disagree
      << " verdict disagreements\n";
  if (!cells.empty() && failed == cells.size()) return exit_code_for(ErrorCode::NoRootInInterval);
  return 0;
}

}  // namespace levsim
