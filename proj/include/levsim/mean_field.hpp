#pragma once

// Classical mean-field integration of the nonlinear sphere + cavity
// equations (noise dropped). Used as an independent check of the
// steady-state solver.

#include <complex>
#include <optional>
#include <vector>

#include "levsim/model.hpp"

namespace levsim {

struct MeanFieldState {
  double x = 0.0;  // m
  double p = 0.0;  // kg m/s
  std::complex<double> a{0.0, 0.0};
};

struct MeanFieldOptions {
  /// Replaces γ (otherwise taken from the damping model at the small-oscillation ω_m).
  std::optional<double> damping_override;
  /// Converged when the late-window spread of x is below this (m).
  double x_tolerance = 0.0;  // 0 → 1e-6 λ
  /// ... and the spread of |a| relative to its mean is below this.
  double amplitude_tolerance = 1e-8;
  /// Keep every n-th step in the returned trajectory (0 disables recording).
  std::size_t record_every = 0;
};

struct MeanFieldResult {
  double x_mean = 0.0;
  double p_mean = 0.0;
  std::complex<double> a_mean{0.0, 0.0};
  double abs_a_mean = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  double gamma = 0.0;
  std::vector<std::pair<double, MeanFieldState>> trajectory;
};

/// Derivative of the state under
///   ẋ = p/m,
///   ṗ = −ħgk|a|² sin(2kx) − qE_x(x) − (γ/2) p,
///   ȧ = [i(Δ0 + g cos²kx) − κ/2] a − iE.
MeanFieldState mean_field_rhs(const DerivedParams& d, double delta0, double c0, double gamma,
                              const MeanFieldState& s);

/// State at rest at x with the cavity at its fixed point for that frozen x.
MeanFieldState adiabatic_state(const DerivedParams& d, double delta0, double x);

/// Mechanical damping used when the integrator serves as a fixed-point
/// oracle. With ȧ = [iΔ − κ/2]a the Δ > 0 side is optomechanically
/// anti-damped, so the physical γ alone cannot pull the trajectory onto x_s;
/// γ does not move the fixed point.
double oracle_damping(const DerivedParams& d);

/// Default step: min(0.01/κ, 0.01/ω_est) with ω_est the small-oscillation
/// frequency at x = 0.
double default_mean_field_step(const DerivedParams& d, double delta0);

/// Fixed-step RK4 until the (x, |a|) envelope over a window of several
/// mechanical periods has contracted below tolerance. Reports averages over
/// the final window. Throws NotConverged if t_max is reached first.
/// dt <= 0 selects the default step; dt·κ must be < 0.1.
MeanFieldResult integrate_mean_field(const DerivedParams& d, double delta0, double c0,
                                     const MeanFieldState& initial, double t_max, double dt,
                                     const MeanFieldOptions& opts = {});

}  // namespace levsim
