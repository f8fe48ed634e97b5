#pragma once

// Linearized fluctuation dynamics u̇ = A u + n for u = (δx, δp, δX, δY),
// with stability decided two independent ways.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "levsim/model.hpp"
#include "levsim/steady_state.hpp"

namespace levsim {

using Matrix4 = Eigen::Matrix4d;

/// The seven rates that populate the drift matrix plus the diffusion Γ.
/// All in rad/s (or 1/s).
struct LinearCoefficients {
  double omega_m = 0.0;
  double Omega_m = 0.0;
  double gamma = 0.0;
  double G = 0.0;
  double delta = 0.0;  // Δ(x_s)
  double kappa = 0.0;
  double Gamma = 0.0;
};

enum class Verdict { stable, unstable, marginal };

std::string_view to_string(Verdict v);

struct RouthHurwitz {
  double S1 = 0.0;
  double S2 = 0.0;
  Verdict verdict = Verdict::unstable;
  bool stable() const { return verdict == Verdict::stable; }
};

struct EigenStability {
  std::array<std::complex<double>, 4> eigenvalues{};
  double max_real = 0.0;
  bool stable = false;
  int iterations = 0;
};

struct StateSpaceModel {
  LinearCoefficients coeffs;
  Matrix4 A = Matrix4::Zero();
  Matrix4 D = Matrix4::Zero();
  OperatingPoint op;  // default-constructed for synthetic models
  RouthHurwitz routh;
  EigenStability eigen;

  /// The eigenvalue verdict.
  bool stable() const { return eigen.stable; }
};

Matrix4 drift_matrix(const LinearCoefficients& c);
Matrix4 diffusion_matrix(const LinearCoefficients& c);

/// Model for an operating point; damping from the derived parameters at ω_m.
StateSpaceModel build_model(const OperatingPoint& op, const DerivedParams& derived);

/// Model straight from rates (used for sweeps over synthetic parameters).
StateSpaceModel build_model(const LinearCoefficients& c);

/// Monic characteristic polynomial det(λI − A) = λ⁴ + b1 λ³ + b2 λ² + b3 λ + b4,
/// returned as {b1, b2, b3, b4}.
std::array<double, 4> characteristic_polynomial(const LinearCoefficients& c);

/// The two printed conditions S1 > 0, S2 > 0. Values within 1e-12 of their
/// largest contributing term are reported as marginal.
RouthHurwitz routh_hurwitz(const LinearCoefficients& c);
inline RouthHurwitz routh_hurwitz(const StateSpaceModel& m) { return routh_hurwitz(m.coeffs); }

/// Roots of the characteristic quartic by Durand–Kerner with Newton polish.
/// Throws IterationDiverged if the iteration cap is hit without convergence.
EigenStability eigenvalue_stability(const LinearCoefficients& c);
inline EigenStability eigenvalue_stability(const StateSpaceModel& m) {
  return eigenvalue_stability(m.coeffs);
}

/// Stability callback for the steady-state solver.
StabilityCheck stability_check(const DerivedParams& derived);

}  // namespace levsim
