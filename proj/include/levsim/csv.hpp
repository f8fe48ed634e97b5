#pragma once

// Deterministic text output: shortest round-trip numbers, '.' decimal
// separator, Unix newlines.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace levsim {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal that parses back to the same double; "nan"/"inf" for non-finite.
std::string format_number(double v);

/// Empty string for a missing value.
std::string format_optional(const std::optional<double>& v);

/// The comment lines every CSV starts with.
std::string csv_preamble(std::string_view canonical_config, std::string_view command);

/// Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace levsim
