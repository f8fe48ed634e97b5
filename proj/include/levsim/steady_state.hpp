#pragma once

// Equilibrium of the trapped sphere: the constrained transcendental force
// balance, the intracavity amplitude and the effective linearized parameters.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "levsim/model.hpp"

namespace levsim {

struct OperatingPoint {
  double x_s = 0.0;        // m
  double a_s = 0.0;        // dimensionless, real > 0
  double omega_m = 0.0;    // rad/s
  double Omega_m = 0.0;    // rad/s
  double delta_eff = 0.0;  // Δ(x_s), rad/s
  double G = 0.0;          // rad/s
  double A_q = 0.0;        // N/m
  double delta0 = 0.0;     // rad/s
  double ring_offset = 0.0;
  double residual = 0.0;           // N
  double residual_relative = 0.0;  // |residual| / force scale
};

/// Returns true when the operating point yields a Hurwitz drift matrix.
/// Supplied by the caller so this module does not depend on linear_dynamics.
using StabilityCheck = std::function<bool(const OperatingPoint&)>;

struct SolveOptions {
  std::size_t grid_points = 4001;
  double bisection_tolerance = 1e-15;  // fraction of the admissible interval
  std::optional<std::size_t> root_index;  // pick the n-th stable root by |x_s|
  bool exact_spring = false;              // curvature-corrected A_q in Ω_m
};

/// Force balance f(x) = A_q(C0 + x) + ħgkE² sin(2kx) / (κ²/4 + Δ(x)²).
double steady_state_force(const DerivedParams& d, double delta0, double c0, double A_q, double x);

/// max(|A_q C0|, 4ħgkE²/κ²); the scale against which residuals are judged.
double steady_state_force_scale(const DerivedParams& d, double c0, double A_q);

double effective_detuning(const DerivedParams& d, double delta0, double x);

/// a_s = √(4E² / (4Δ_eff² + κ²)).
double steady_amplitude(const DerivedParams& d, double delta_eff);

/// ω_m = √(2ħgk²a_s² cos(2kx_s)/m). Throws UnstableTrap if cos(2kx_s) < 0.
double mechanical_frequency(const DerivedParams& d, double a_s, double x_s);

/// Evaluates every operating-point quantity at a given x_s. A_q is passed in
/// so resonant-mode solutions can supply their own ring charge.
OperatingPoint make_operating_point(const DerivedParams& d, double delta0, double c0, double A_q,
                                    double x_s, bool exact_spring = false);

/// Every admissible root of the force balance in (−π/4k, π/4k), sorted by |x_s|.
std::vector<double> steady_state_roots(const DerivedParams& d, double delta0, double c0,
                                       const SolveOptions& opts = {});

/// Operating points for all admissible roots, sorted by |x_s|.
std::vector<OperatingPoint> candidate_operating_points(const DerivedParams& d, double delta0,
                                                       double c0, const SolveOptions& opts = {});

/// Stable root with the smallest |x_s| (or `opts.root_index`).
/// Throws NoRootInInterval or AllRootsUnstable.
OperatingPoint solve_xs(const DerivedParams& d, double delta0, double c0,
                        const StabilityCheck& is_stable, const SolveOptions& opts = {});

struct ResonantSolution {
  double x_s = 0.0;
  double ring_charge = 0.0;  // Q, C
  double field = 0.0;        // E_x(x_s), V/m
  double residual_force = 0.0;      // relative residual of the force balance
  double residual_resonance = 0.0;  // relative residual of the resonance condition
  OperatingPoint op;
};

/// Left and right sides of the resonance condition
/// 8ħgk²E² cos(2kx)/(κ² + 4Δ²) = mΔ², i.e. ω_m = Δ(x_s).
struct ResonanceSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
ResonanceSides resonance_condition(const DerivedParams& d, double delta0, double x);

/// Chooses x_s so that Δ(x_s) = ω_m (Stokes side), then the ring charge from
/// the force balance. Throws NoResonantSolution or UnstableResonance.
ResonantSolution solve_resonant_ring_charge(const DerivedParams& d, double delta0, double c0,
                                            double q, const StabilityCheck& is_stable,
                                            const SolveOptions& opts = {});

}  // namespace levsim
