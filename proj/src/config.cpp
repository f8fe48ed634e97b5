#include "levsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "levsim/csv.hpp"
#include "levsim/error.hpp"

namespace levsim {

namespace {

using constants::torr;
using constants::u;

struct NumericKey {
  const char* name;
  bool required;
  double (*get)(const SystemConfig&);
  void (*set)(SystemConfig&, double);
};

// Keys in serialization order. Alternatives (ring charge/field, detuning,
// pressure) are handled separately below.
const NumericKey kKeys[] = {
    {"sphere_radius_nm", true, [](const SystemConfig& c) { return c.sphere_radius * 1e9; },
     [](SystemConfig& c, double v) { c.sphere_radius = v * 1e-9; }},
    {"density_kg_m3", true, [](const SystemConfig& c) { return c.density; },
     [](SystemConfig& c, double v) { c.density = v; }},
    {"permittivity", true, [](const SystemConfig& c) { return c.permittivity; },
     [](SystemConfig& c, double v) { c.permittivity = v; }},
    {"wavelength_nm", true, [](const SystemConfig& c) { return c.wavelength * 1e9; },
     [](SystemConfig& c, double v) { c.wavelength = v * 1e-9; }},
    {"cavity_length_cm", true, [](const SystemConfig& c) { return c.cavity_length * 1e2; },
     [](SystemConfig& c, double v) { c.cavity_length = v * 1e-2; }},
    {"finesse", true, [](const SystemConfig& c) { return c.finesse; },
     [](SystemConfig& c, double v) { c.finesse = v; }},
    {"input_power_mw", true, [](const SystemConfig& c) { return c.input_power * 1e3; },
     [](SystemConfig& c, double v) { c.input_power = v * 1e-3; }},
    {"ring_radius_mm", true, [](const SystemConfig& c) { return c.ring_radius * 1e3; },
     [](SystemConfig& c, double v) { c.ring_radius = v * 1e-3; }},
    {"ring_offset_nm", true, [](const SystemConfig& c) { return c.ring_offset * 1e9; },
     [](SystemConfig& c, double v) { c.ring_offset = v * 1e-9; }},
    {"mcp_epsilon", true, [](const SystemConfig& c) { return c.mcp_epsilon; },
     [](SystemConfig& c, double v) { c.mcp_epsilon = v; }},
    {"temperature_k", true, [](const SystemConfig& c) { return c.temperature; },
     [](SystemConfig& c, double v) { c.temperature = v; }},
    {"gas_molecule_mass_u", false, [](const SystemConfig& c) { return c.gas_molecule_mass / u; },
     [](SystemConfig& c, double v) { c.gas_molecule_mass = v * u; }},
    {"ring_charge_c", false, [](const SystemConfig& c) { return c.ring.value; },
     [](SystemConfig& c, double v) { c.ring = RingSource::charge(v); }},
    {"ring_field_v_m", false, [](const SystemConfig& c) { return c.ring.value; },
     [](SystemConfig& c, double v) { c.ring = RingSource::field(v); }},
    {"detuning_over_kappa", false, [](const SystemConfig& c) { return c.detuning.value; },
     [](SystemConfig& c, double v) { c.detuning = Detuning::over_kappa(v); }},
    {"detuning_rad_s", false, [](const SystemConfig& c) { return c.detuning.value; },
     [](SystemConfig& c, double v) { c.detuning = Detuning::absolute(v); }},
    {"gas_pressure_torr", false, [](const SystemConfig& c) { return c.gas_pressure / torr; },
     [](SystemConfig& c, double v) { c.gas_pressure = v * torr; }},
    {"gas_pressure_pa", false, [](const SystemConfig& c) { return c.gas_pressure; },
     [](SystemConfig& c, double v) { c.gas_pressure = v; }},
};

const char* const kTextKeys[] = {"spectrum_form", "ring_mode", "negativity_log_base"};

// Exactly one of each group is required.
const std::vector<std::vector<std::string>> kAlternatives = {
    {"ring_charge_c", "ring_field_v_m"},
    {"detuning_over_kappa", "detuning_rad_s"},
    {"gas_pressure_torr", "gas_pressure_pa"},
};

const NumericKey* find_numeric(std::string_view key) {
  for (const auto& k : kKeys)
    if (key == k.name) return &k;
  return nullptr;
}

bool is_text_key(std::string_view key) {
  return std::find(std::begin(kTextKeys), std::end(kTextKeys), key) != std::end(kTextKeys);
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string required_key_list() {
  std::string out;
  for (const auto& k : kKeys) {
    if (!k.required) continue;
    if (!out.empty()) out += ", ";
    out += k.name;
  }
  for (const auto& group : kAlternatives) {
    out += ", ";
    for (std::size_t i = 0; i < group.size(); ++i) out += (i ? " | " : "") + group[i];
  }
  return out;
}

}  // namespace

ConfigFile parse_config_text(std::string_view text) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry, std::less<>> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw SimError(ErrorCode::ParseError,
                     "line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw SimError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": missing key");
    if (!find_numeric(key) && !is_text_key(key))
      throw SimError(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (value.empty())
      throw SimError(ErrorCode::ParseError,
                     "line " + std::to_string(line_no) + ": missing value for '" + key + "'");
    if (const auto it = entries.find(key); it != entries.end())
      throw SimError(ErrorCode::ParseError, "duplicate key '" + key + "' on lines " +
                                                std::to_string(it->second.line) + " and " + std::to_string(line_no));
    entries.emplace(key, Entry{value, line_no});
  }

  std::vector<std::string> missing;
  for (const auto& k : kKeys)
    if (k.required && !entries.count(k.name)) missing.push_back(k.name);
  for (const auto& group : kAlternatives) {
    int present = 0;
    for (const auto& k : group) present += entries.count(k) ? 1 : 0;
    if (present > 1)
      throw SimError(ErrorCode::ValidationError, "keys '" + group[0] + "' and '" + group[1] + "' are mutually exclusive");
    if (present == 0) missing.push_back(group[0] + " | " + group[1]);
  }
  if (entries.empty())
    throw SimError(ErrorCode::ValidationError, "empty config; required keys: " + required_key_list());
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw SimError(ErrorCode::ValidationError, "missing required key(s): " + list);
  }

  ConfigFile cfg;
  for (const auto& [key, entry] : entries) {
    if (const auto* nk = find_numeric(key)) {
      const auto v = parse_number(entry.value);
      if (!v)
        throw SimError(ErrorCode::ParseError, "line " + std::to_string(entry.line) + ": '" + key +
                                                  "' needs a finite number, got '" + entry.value + "'");
      nk->set(cfg.system, *v);
      cfg.file_values[key] = *v;
    } else if (key == "spectrum_form") {
      cfg.options.spectrum_form = parse_spectrum_form(entry.value);
    } else if (key == "ring_mode") {
      cfg.options.ring_mode = parse_ring_mode(entry.value);
    } else if (key == "negativity_log_base") {
      cfg.options.log_base = parse_log_base(entry.value);
    }
  }
  cfg.pressure_in_torr = entries.count("gas_pressure_torr") > 0;
  validate(cfg.system);
  return cfg;
}

ConfigFile parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SimError(ErrorCode::IoError, "cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw SimError(ErrorCode::IoError, "cannot read config '" + path.string() + "'");
  return parse_config_text(ss.str());
}

namespace {

std::vector<std::pair<std::string, std::string>> config_pairs(const ConfigFile& cfg) {
  const auto& s = cfg.system;
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const char* key) {
    const auto* nk = find_numeric(key);
    const auto it = cfg.file_values.find(key);
    double v = nk->get(s);
    // Only trust the recorded value while it still maps to the same SI number.
    if (it != cfg.file_values.end()) {
      SystemConfig probe = s;
      nk->set(probe, it->second);
      if (nk->get(probe) == v) v = it->second;
    } else if (std::string_view(key) == "gas_molecule_mass_u" && s.gas_molecule_mass == SystemConfig{}.gas_molecule_mass) {
      v = 28.97;
    }
    out.emplace_back(key, format_number(v));
  };
  for (const auto& k : kKeys)
    if (k.required || std::string_view(k.name) == "gas_molecule_mass_u") add(k.name);
  add(s.ring.kind == RingSource::Kind::charge ? "ring_charge_c" : "ring_field_v_m");
  add(s.detuning.kind == Detuning::Kind::over_kappa ? "detuning_over_kappa" : "detuning_rad_s");
  add(cfg.pressure_in_torr ? "gas_pressure_torr" : "gas_pressure_pa");
  out.emplace_back("spectrum_form", std::string(to_string(cfg.options.spectrum_form)));
  out.emplace_back("ring_mode", std::string(to_string(cfg.options.ring_mode)));
  out.emplace_back("negativity_log_base", std::string(to_string(cfg.options.log_base)));
  return out;
}

}  // namespace

std::string serialize_config(const ConfigFile& cfg) {
  std::string out;
  for (const auto& [k, v] : config_pairs(cfg)) out += k + " = " + v + "\n";
  return out;
}

std::string canonical_config(const ConfigFile& cfg) {
  std::string out;
  for (const auto& [k, v] : config_pairs(cfg)) out += (out.empty() ? "" : ",") + k + "=" + v;
  return out;
}

std::vector<std::string> numeric_config_keys() {
  std::vector<std::string> out;
  for (const auto& k : kKeys) out.emplace_back(k.name);
  return out;
}

void set_numeric_key(SystemConfig& cfg, std::string_view key, double value) {
  const auto* nk = find_numeric(key);
  if (!nk) throw SimError(ErrorCode::ValidationError, "'" + std::string(key) + "' is not a numeric config key");
  nk->set(cfg, value);
}

double get_numeric_key(const SystemConfig& cfg, std::string_view key) {
  const auto* nk = find_numeric(key);
  if (!nk) throw SimError(ErrorCode::ValidationError, "'" + std::string(key) + "' is not a numeric config key");
  return nk->get(cfg);
}

}  // namespace levsim
