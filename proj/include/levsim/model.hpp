#pragma once

// Physical inputs of the levitated-sphere / charged-ring cavity and every
// constant derived from them. All quantities are SI.

#include <numbers>
#include <string>

namespace levsim {

/// CODATA-2018 values. Not configurable.
namespace constants {
inline constexpr double c = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double eps0 = 8.8541878128e-12;
inline constexpr double kB = 1.380649e-23;
inline constexpr double e0 = 1.602176634e-19;
inline constexpr double u = 1.66053906660e-27;

inline constexpr double torr = 133.322368;  // Pa
inline constexpr double coulomb_k = 1.0 / (4.0 * std::numbers::pi * eps0);
}  // namespace constants

/// The ring is specified either by its charge Q (C) or by the axial field it
/// produces at x = 0 (V/m). A field spec is inverted through the exact on-axis
/// expression.
struct RingSource {
  enum class Kind { charge, field };
  Kind kind = Kind::charge;
  double value = 0.0;

  static RingSource charge(double coulombs) { return {Kind::charge, coulombs}; }
  static RingSource field(double volts_per_metre) { return {Kind::field, volts_per_metre}; }
};

/// Laser detuning Δ0 = ω_L − ω_c, either absolute (rad/s) or in units of κ.
struct Detuning {
  enum class Kind { absolute, over_kappa };
  Kind kind = Kind::over_kappa;
  double value = 0.0;

  static Detuning absolute(double rad_per_s) { return {Kind::absolute, rad_per_s}; }
  static Detuning over_kappa(double ratio) { return {Kind::over_kappa, ratio}; }
};

struct SystemConfig {
  double sphere_radius = 50e-9;
  double density = 2650.0;
  double permittivity = 2.3;
  double wavelength = 1064e-9;
  double cavity_length = 1e-2;
  double finesse = 5e4;
  double input_power = 1e-3;
  double ring_radius = 5e-3;
  RingSource ring = RingSource::field(7.25e10);
  double ring_offset = 1064e-9;  // C0
  double mcp_epsilon = 1e-5;
  Detuning detuning = Detuning::over_kappa(0.8);
  double temperature = 300.0;
  double gas_pressure = 1e-10 * constants::torr;
  double gas_molecule_mass = 28.97 * constants::u;
};

/// Throws SimError(ConfigInvalid) naming the first offending field.
void validate(const SystemConfig& cfg);

/// Damping and diffusion of the mechanical mode at a given ω_m.
struct Damping {
  double gamma_ph = 0.0;
  double gamma_gas = 0.0;
  double gamma = 0.0;
  double Gamma_diff = 0.0;
};

struct DerivedParams {
  SystemConfig config;

  double k = 0.0;              // 1/m
  double omega_c = 0.0;        // rad/s
  double sphere_volume = 0.0;  // m^3
  double waist = 0.0;          // m
  double mode_volume = 0.0;    // m^3
  double mass = 0.0;           // kg
  double g = 0.0;              // rad/s
  double kappa = 0.0;          // rad/s
  double drive = 0.0;          // E, 1/s
  double q_mcp = 0.0;          // C
  double ring_charge = 0.0;    // Q, C
  double A_q = 0.0;            // qQ/(4πε0R³), N/m
  double delta0 = 0.0;         // rad/s
  double gas_speed = 0.0;      // √(3kBT/m_a), m/s
  double gamma_gas = 0.0;      // 1/s, independent of ω_m

  /// γ_ph, γ and Γ depend on the operating point's ω_m.
  Damping damping(double omega_m) const;
};

DerivedParams derive_constants(const SystemConfig& cfg);

/// Ring charge producing `field` (V/m) on axis at distance C0 from the ring plane.
double ring_charge_for_field(double field, double ring_radius, double ring_offset);

/// φ(x) in volts; even in C0 + x.
double ring_potential(double x, const SystemConfig& cfg, double ring_charge);

/// Axial field E_x(x) in V/m; equals −dφ/dx.
double ring_field(double x, const SystemConfig& cfg, double ring_charge);

/// Electrostatic spring constant of the mCP in the ring field. The
/// approximate form is qQ/(4πε0R³); the exact form includes the curvature
/// factor evaluated at the equilibrium position.
double electrostatic_spring(const SystemConfig& cfg, double ring_charge, double x_s, bool exact);

Damping damping_and_diffusion(const SystemConfig& cfg, double omega_m);

}  // namespace levsim
