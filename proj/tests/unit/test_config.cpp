#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "levsim/config.hpp"
#include "levsim/error.hpp"

using namespace levsim;

namespace {

const std::string kDir = LEVSIM_CONFIG_DIR;

const char* const kMinimal =
    "sphere_radius_nm = 50\n"
    "density_kg_m3 = 2650\n"
    "permittivity = 2.3\n"
    "wavelength_nm = 1064\n"
    "cavity_length_cm = 1\n"
    "finesse = 50000\n"
    "input_power_mw = 1\n"
    "ring_radius_mm = 5\n"
    "ring_field_v_m = 7.25e10\n"
    "ring_offset_nm = 1064\n"
    "mcp_epsilon = 1e-5\n"
    "detuning_over_kappa = 0.8\n"
    "temperature_k = 300\n"
    "gas_pressure_torr = 1e-10\n";

SimError error_of(std::string_view text) {
  try {
    parse_config_text(text);
  } catch (const SimError& e) {
    return e;
  }
  FAIL("expected a SimError");
  return SimError(ErrorCode::IoError, "");
}

bool contains(const SimError& e, std::string_view s) { return std::string(e.what()).find(s) != std::string::npos; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("example config reproduces the built-in defaults") {
  const auto f = parse_config(kDir + "/fig1.cfg");
  const SystemConfig d;
  const auto& s = f.system;
  CHECK(rel(s.sphere_radius, d.sphere_radius) < 1e-15);
  CHECK(s.density == d.density);
  CHECK(s.permittivity == d.permittivity);
  CHECK(rel(s.wavelength, d.wavelength) < 1e-15);
  CHECK(rel(s.cavity_length, d.cavity_length) < 1e-15);
  CHECK(s.finesse == d.finesse);
  CHECK(rel(s.input_power, d.input_power) < 1e-15);
  CHECK(rel(s.ring_radius, d.ring_radius) < 1e-15);
  CHECK(s.ring.kind == RingSource::Kind::field);
  CHECK(s.ring.value == 7.25e10);
  CHECK(rel(s.ring_offset, d.ring_offset) < 1e-15);
  CHECK(s.mcp_epsilon == d.mcp_epsilon);
  CHECK(s.detuning.kind == Detuning::Kind::over_kappa);
  CHECK(s.detuning.value == 0.8);
  CHECK(s.temperature == d.temperature);
  CHECK(rel(s.gas_pressure, d.gas_pressure) < 1e-15);
  CHECK(rel(s.gas_molecule_mass, d.gas_molecule_mass) < 1e-15);
  CHECK(f.options.ring_mode == RingMode::fixed_charge);
  CHECK(f.options.spectrum_form == SpectrumForm::input_output);
}

TEST_CASE("all shipped configs parse") {
  for (const auto& entry : std::filesystem::directory_iterator(kDir)) {
    if (entry.path().extension() != ".cfg") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(parse_config(entry.path()));
  }
  CHECK(parse_config(kDir + "/fig2.cfg").options.ring_mode == RingMode::resonant);
  CHECK(parse_config(kDir + "/decoupled_q0.cfg").system.mcp_epsilon == 0.0);
}

TEST_CASE("comments, blank lines and whitespace") {
  const std::string text = std::string("# heading\n\n   \n") + kMinimal + "  ring_mode =  resonant  # trailing\n";
  const auto f = parse_config_text(text);
  CHECK(f.options.ring_mode == RingMode::resonant);
  CHECK(f.system.finesse == 50000.0);
}

TEST_CASE("empty config lists the required keys") {
  const auto e = error_of("");
  CHECK(e.code() == ErrorCode::ValidationError);
  CHECK(contains(e, "empty config"));
  CHECK(contains(e, "sphere_radius_nm"));
  CHECK(contains(e, "ring_charge_c | ring_field_v_m"));
  CHECK(error_of("# only a comment\n").code() == ErrorCode::ValidationError);
}

TEST_CASE("missing keys are named") {
  std::string text = kMinimal;
  text.erase(text.find("finesse"), std::string("finesse = 50000\n").size());
  const auto e = error_of(text);
  CHECK(e.code() == ErrorCode::ValidationError);
  CHECK(contains(e, "finesse"));
}

TEST_CASE("duplicate keys report both lines") {
  const auto e = error_of(std::string(kMinimal) + "finesse = 1\n");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(contains(e, "duplicate key 'finesse' on lines 6 and 15"));
}

TEST_CASE("unknown, malformed and non-numeric lines") {
  auto e = error_of(std::string(kMinimal) + "colour = blue\n");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(contains(e, "line 15"));
  CHECK(contains(e, "colour"));

  e = error_of(std::string(kMinimal) + "just words\n");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(contains(e, "line 15"));

  e = error_of(std::string(kMinimal) + "= 3\n");
  CHECK(e.code() == ErrorCode::ParseError);

  e = error_of(std::string(kMinimal) + "gas_molecule_mass_u =\n");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(contains(e, "missing value"));

  std::string text = kMinimal;
  text.replace(text.find("= 2.3"), 5, "= 2.3x");
  e = error_of(text);
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(contains(e, "line 3"));

  text = kMinimal;
  text.replace(text.find("= 2650"), 6, "= nan");
  CHECK(error_of(text).code() == ErrorCode::ParseError);
}

TEST_CASE("alternative keys are mutually exclusive") {
  auto e = error_of(std::string(kMinimal) + "ring_charge_c = 1\n");
  CHECK(e.code() == ErrorCode::ValidationError);
  CHECK(contains(e, "mutually exclusive"));
  e = error_of(std::string(kMinimal) + "gas_pressure_pa = 1e-8\n");
  CHECK(e.code() == ErrorCode::ValidationError);
  e = error_of(std::string(kMinimal) + "detuning_rad_s = 1e5\n");
  CHECK(e.code() == ErrorCode::ValidationError);
}

TEST_CASE("text options are checked") {
  CHECK(error_of(std::string(kMinimal) + "ring_mode = sideways\n").code() == ErrorCode::ValidationError);
  CHECK(error_of(std::string(kMinimal) + "spectrum_form = other\n").code() == ErrorCode::ValidationError);
  CHECK(error_of(std::string(kMinimal) + "negativity_log_base = 7\n").code() == ErrorCode::ValidationError);
  const auto f = parse_config_text(std::string(kMinimal) + "negativity_log_base = 2\nspectrum_form = maintext\n");
  CHECK(f.options.log_base == LogBase::base2);
  CHECK(f.options.spectrum_form == SpectrumForm::maintext);
}

TEST_CASE("physical validation runs after parsing") {
  std::string text = kMinimal;
  text.replace(text.find("= 300"), 5, "= -3");
  const auto e = error_of(text);
  CHECK(e.code() == ErrorCode::ConfigInvalid);
  CHECK(contains(e, "temperature"));
}

TEST_CASE("unreadable file") {
  try {
    parse_config(kDir + "/does_not_exist.cfg");
    FAIL("expected IoError");
  } catch (const SimError& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("serialization round trip") {
  for (const char* name : {"fig1.cfg", "fig2.cfg", "decoupled_c0.cfg", "weak_charge.cfg"}) {
    const auto a = parse_config(kDir + "/" + name);
    const auto text = serialize_config(a);
    const auto b = parse_config_text(text);
    CHECK(serialize_config(b) == text);
    CHECK(canonical_config(b) == canonical_config(a));
    for (const auto& key : numeric_config_keys()) {
      if (key == "ring_charge_c" || key == "ring_field_v_m" || key == "detuning_over_kappa" ||
          key == "detuning_rad_s" || key == "gas_pressure_torr" || key == "gas_pressure_pa")
        continue;
      CHECK(get_numeric_key(a.system, key) == get_numeric_key(b.system, key));
    }
    CHECK(a.system.ring.value == b.system.ring.value);
    CHECK(a.system.gas_pressure == b.system.gas_pressure);
  }
}

TEST_CASE("canonical form") {
  const auto f = parse_config(kDir + "/fig1.cfg");
  const auto s = canonical_config(f);
  CHECK(s.find('\n') == std::string::npos);
  CHECK(s.find(' ') == std::string::npos);
  CHECK(s.rfind("sphere_radius_nm=50,", 0) == 0);
  const auto at = s.find("ring_field_v_m=");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(s.substr(at + 15, s.find(',', at) - at - 15)) == 7.25e10);
  CHECK(s.find("gas_pressure_torr=1e-10") != std::string::npos);
  CHECK(s.find("gas_molecule_mass_u=28.97") != std::string::npos);
  CHECK(s.find("ring_mode=fixed_charge") != std::string::npos);
}

TEST_CASE("numeric keys in file units") {
  SystemConfig c;
  set_numeric_key(c, "sphere_radius_nm", 80);
  CHECK(rel(c.sphere_radius, 80e-9) < 1e-15);
  CHECK(get_numeric_key(c, "sphere_radius_nm") == doctest::Approx(80));
  set_numeric_key(c, "ring_charge_c", 2.0);
  CHECK(c.ring.kind == RingSource::Kind::charge);
  CHECK(c.ring.value == 2.0);
  set_numeric_key(c, "gas_pressure_pa", 1e-6);
  CHECK(c.gas_pressure == 1e-6);
  CHECK_THROWS_AS(set_numeric_key(c, "ring_mode", 1.0), SimError);
  CHECK_THROWS_AS(get_numeric_key(c, "nope"), SimError);
  const auto keys = numeric_config_keys();
  CHECK(std::find(keys.begin(), keys.end(), "finesse") != keys.end());
  CHECK(std::find(keys.begin(), keys.end(), "spectrum_form") == keys.end());
}
