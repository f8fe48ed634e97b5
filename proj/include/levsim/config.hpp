#pragma once

// Flat `key = value` configuration files. Units live in the key names.

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "levsim/entanglement.hpp"
#include "levsim/model.hpp"
#include "levsim/pipeline.hpp"
#include "levsim/spectra.hpp"

namespace levsim {

/// Settings that choose between alternative formulas rather than describe
/// the physical system.
struct RunOptions {
  SpectrumForm spectrum_form = SpectrumForm::input_output;
  RingMode ring_mode = RingMode::fixed_charge;
  LogBase log_base = LogBase::natural;
};

struct ConfigFile {
  SystemConfig system;
  RunOptions options;
  bool pressure_in_torr = true;  // which pressure key to write back
  /// Numeric values exactly as written, in file units. Serialization prefers
  /// these so unit conversions never show up as rounding noise.
  std::map<std::string, double, std::less<>> file_values;
};

/// Parses and validates. Throws ParseError (with line numbers),
/// ValidationError (missing/conflicting keys) or ConfigInvalid.
ConfigFile parse_config_text(std::string_view text);

/// Throws IoError if the file cannot be read.
ConfigFile parse_config(const std::filesystem::path& path);

/// One `key = value` line per setting, in a fixed order. Parses back to the same config.
std::string serialize_config(const ConfigFile& cfg);

/// Single-line `key=value,key=value` form for CSV headers.
std::string canonical_config(const ConfigFile& cfg);

/// Keys whose value is a number (usable as a stability-map parameter).
std::vector<std::string> numeric_config_keys();

/// Sets a numeric key in its file units (e.g. nm for sphere_radius_nm).
/// Throws ValidationError for an unknown or non-numeric key.
void set_numeric_key(SystemConfig& cfg, std::string_view key, double value);
double get_numeric_key(const SystemConfig& cfg, std::string_view key);

}  // namespace levsim
