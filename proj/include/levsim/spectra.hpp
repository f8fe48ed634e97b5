#pragma once

// Symmetrized spectra of the cavity output quadratures.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "levsim/linear_dynamics.hpp"

namespace levsim {

using Complex = std::complex<double>;

enum class Quadrature { X, Y };

/// Which assembly of the output spectrum to use.
///  - input_output: cross term −κ Re[j_J d(−ω)]/|d|² with j_X = b_X, j_Y = c_Y
///    (follows from δJ_out = √κ δJ − J_in; flat 1/2 when G = 0).
///  - supplement: as printed per quadrature, cross term carried with a factor 1/2.
///  - maintext: as printed in the compact form, cross term uses b_J for both quadratures.
enum class SpectrumForm { input_output, supplement, maintext };

std::string_view to_string(SpectrumForm f);
SpectrumForm parse_spectrum_form(std::string_view s);

/// Shot-noise floor of a symmetrized quadrature spectrum.
inline constexpr double kSpectrumBaseline = 0.5;

struct TransferCoefficients {
  Complex chi_c_inv;  // Δ² + (κ/2 − iω)²
  Complex chi_m_inv;  // ω_mΩ_m − ω² − iωγ/2
  Complex d;          // χ_c⁻¹χ_m⁻¹ − G²ω_mΔ = det(−(iωI + A))
  Complex a_X, b_X, c_X;
  Complex a_Y, b_Y, c_Y;
};

TransferCoefficients transfer_coefficients(const LinearCoefficients& c, double omega);
inline TransferCoefficients transfer_coefficients(const StateSpaceModel& m, double omega) {
  return transfer_coefficients(m.coeffs, omega);
}

/// S_JJ^out(ω). Throws NonFiniteResult if |d(ω)| underflows.
double output_spectrum(const StateSpaceModel& m, double omega, Quadrature q,
                       SpectrumForm form = SpectrumForm::input_output);

struct SpectrumRow {
  double omega = 0.0;
  double omega_over_kappa = 0.0;
  double S_XX = 0.0;
  double S_YY = 0.0;
  double S_XX_norm = 0.0;
  double S_YY_norm = 0.0;
  bool unstable = false;
};

using SpectrumTable = std::vector<SpectrumRow>;

/// One row per grid point (rad/s), in grid order. Grid must be strictly
/// increasing. Evaluated in parallel; identical to the serial reference.
SpectrumTable spectrum_sweep(const StateSpaceModel& m, std::span<const double> omega_grid,
                             SpectrumForm form = SpectrumForm::input_output);

SpectrumRow spectrum_row(const StateSpaceModel& m, double omega, SpectrumForm form);

/// Uniform grid of n points from lo to hi (inclusive) scaled by `unit`.
std::vector<double> linear_grid(double lo, double hi, std::size_t n, double unit = 1.0);

}  // namespace levsim
