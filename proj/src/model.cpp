#include "levsim/model.hpp"

#include <cmath>

#include "levsim/error.hpp"

namespace levsim {

using std::numbers::pi;

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::UnstableTrap: return "UnstableTrap";
    case ErrorCode::NoRootInInterval: return "NoRootInInterval";
    case ErrorCode::AllRootsUnstable: return "AllRootsUnstable";
    case ErrorCode::NoResonantSolution: return "NoResonantSolution";
    case ErrorCode::UnstableResonance: return "UnstableResonance";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::IterationDiverged: return "IterationDiverged";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::UnstableModel: return "UnstableModel";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::UnphysicalCovariance: return "UnphysicalCovariance";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
      return 1;
    case ErrorCode::IoError:
      return 3;
    default:
      return 2;
  }
}

namespace {

void require(bool ok, const char* field, const char* why) {
  if (!ok) throw SimError(ErrorCode::ConfigInvalid, std::string(field) + ": " + why);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const SystemConfig& cfg) {
  require(positive_finite(cfg.sphere_radius), "sphere_radius", "must be > 0");
  require(positive_finite(cfg.density), "density", "must be > 0");
  require(std::isfinite(cfg.permittivity) && cfg.permittivity > 1.0, "permittivity", "must be > 1");
  require(positive_finite(cfg.wavelength), "wavelength", "must be > 0");
  require(cfg.sphere_radius <= cfg.wavelength / 10.0, "sphere_radius",
          "must be much smaller than the wavelength (<= wavelength/10)");
  require(positive_finite(cfg.cavity_length), "cavity_length", "must be > 0");
  require(positive_finite(cfg.finesse), "finesse", "must be > 0");
  require(positive_finite(cfg.input_power), "input_power", "must be > 0");
  require(positive_finite(cfg.ring_radius), "ring_radius", "must be > 0");
  require(cfg.ring_radius >= 10.0 * cfg.sphere_radius, "ring_radius",
          "must be much larger than the sphere radius (>= 10 r)");
  require(std::isfinite(cfg.ring.value), "ring", "must be finite");
  require(std::isfinite(cfg.ring_offset), "ring_offset", "must be finite");
  require(std::abs(cfg.ring_offset) <= cfg.cavity_length / 10.0, "ring_offset",
          "must be much smaller than the cavity length (<= L/10)");
  require(cfg.ring.kind == RingSource::Kind::charge || cfg.ring_offset != 0.0, "ring_field",
          "cannot be inverted to a charge when ring_offset is 0 (field vanishes there)");
  require(std::isfinite(cfg.mcp_epsilon) && cfg.mcp_epsilon >= 0.0, "mcp_epsilon", "must be >= 0");
  require(std::isfinite(cfg.detuning.value), "detuning", "must be finite");
  require(positive_finite(cfg.temperature), "temperature", "must be > 0");
  require(positive_finite(cfg.gas_pressure), "gas_pressure", "must be > 0");
  require(positive_finite(cfg.gas_molecule_mass), "gas_molecule_mass", "must be > 0");
}

double ring_charge_for_field(double field, double ring_radius, double ring_offset) {
  const double u = ring_offset / ring_radius;
  const double r3 = ring_radius * ring_radius * ring_radius;
  return field * r3 * std::pow(1.0 + u * u, 1.5) / (constants::coulomb_k * ring_offset);
}

double ring_potential(double x, const SystemConfig& cfg, double ring_charge) {
  const double u = (cfg.ring_offset + x) / cfg.ring_radius;
  return constants::coulomb_k * ring_charge / cfg.ring_radius / std::sqrt(1.0 + u * u);
}

double ring_field(double x, const SystemConfig& cfg, double ring_charge) {
  const double R = cfg.ring_radius;
  const double s = cfg.ring_offset + x;
  const double u = s / R;
  return constants::coulomb_k * ring_charge * s / (R * R * R * std::pow(1.0 + u * u, 1.5));
}

double electrostatic_spring(const SystemConfig& cfg, double ring_charge, double x_s, bool exact) {
  const double R = cfg.ring_radius;
  const double q = cfg.mcp_epsilon * constants::e0;
  const double approx = constants::coulomb_k * q * ring_charge / (R * R * R);
  if (!exact) return approx;
  const double u = (cfg.ring_offset + x_s) / R;
  const double u2 = u * u;
  return approx * (1.0 - 2.0 * u2) * std::pow(1.0 + u2, -2.5);
}

Damping damping_and_diffusion(const SystemConfig& cfg, double omega_m) {
  if (!(omega_m > 0.0) || !std::isfinite(omega_m))
    throw SimError(ErrorCode::NonPositiveFrequency, "omega_m = " + std::to_string(omega_m));
  using namespace constants;
  const double eps = cfg.permittivity;
  const double r = cfg.sphere_radius;
  const double Vs = 4.0 / 3.0 * pi * r * r * r;
  const double lambda3 = cfg.wavelength * cfg.wavelength * cfg.wavelength;
  const double kT = kB * cfg.temperature;
  const double mass = cfg.density * Vs;
  const double v = std::sqrt(3.0 * kT / cfg.gas_molecule_mass);

  Damping d;
  d.gamma_ph = 4.0 * pi * pi / 5.0 * (eps - 1.0) / (eps + 2.0) * (Vs / lambda3) * omega_m *
               (hbar * omega_m / kT);
  d.gamma_gas = 4.0 * pi * r * r * cfg.gas_pressure / (mass * v);
  d.gamma = d.gamma_ph + d.gamma_gas;
  d.Gamma_diff = d.gamma * kT / (hbar * omega_m);
  return d;
}

Damping DerivedParams::damping(double omega_m) const { return damping_and_diffusion(config, omega_m); }

DerivedParams derive_constants(const SystemConfig& cfg) {
  validate(cfg);
  using namespace constants;
  DerivedParams d;
  d.config = cfg;

  const double eps = cfg.permittivity;
  const double r = cfg.sphere_radius;
  d.k = 2.0 * pi / cfg.wavelength;
  d.omega_c = c * d.k;
  d.sphere_volume = 4.0 / 3.0 * pi * r * r * r;
  d.waist = std::sqrt(cfg.wavelength * cfg.cavity_length / (2.0 * pi));
  d.mode_volume = pi * d.waist * d.waist * cfg.cavity_length / 4.0;
  d.mass = cfg.density * d.sphere_volume;
  d.g = 3.0 * d.sphere_volume / (2.0 * d.mode_volume) * (eps - 1.0) / (eps + 2.0) * d.omega_c;
  d.kappa = c * pi / (2.0 * cfg.cavity_length * cfg.finesse);
  // ω_L ≈ ω_c: detunings are ~1e-9 of the optical frequency.
  d.drive = std::sqrt(d.kappa * cfg.input_power / (hbar * d.omega_c));
  d.q_mcp = cfg.mcp_epsilon * e0;
  d.ring_charge = cfg.ring.kind == RingSource::Kind::charge
                      ? cfg.ring.value
                      : ring_charge_for_field(cfg.ring.value, cfg.ring_radius, cfg.ring_offset);
  d.A_q = electrostatic_spring(cfg, d.ring_charge, 0.0, false);
  d.delta0 = cfg.detuning.kind == Detuning::Kind::absolute ? cfg.detuning.value
                                                           : cfg.detuning.value * d.kappa;
  d.gas_speed = std::sqrt(3.0 * kB * cfg.temperature / cfg.gas_molecule_mass);
  d.gamma_gas = 4.0 * pi * r * r * cfg.gas_pressure / (d.mass * d.gas_speed);
  return d;
}

}  // namespace levsim
