#include "levsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "levsim/error.hpp"

namespace levsim {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw SimError(ErrorCode::IoError, "number formatting failed");
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string csv_preamble(std::string_view canonical_config, std::string_view command) {
  std::string out;
  out += "# config: ";
  out += canonical_config;
  out += "\n# version: ";
  out += kVersion;
  out += "\n# command: ";
  out += command;
  out += "\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SimError(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw SimError(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace levsim
