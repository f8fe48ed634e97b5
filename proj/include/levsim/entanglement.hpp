#pragma once

// Stationary covariance of the linearized Gaussian state and its
// logarithmic negativity across the mechanics | light split.

#include <string_view>

#include "levsim/linear_dynamics.hpp"

namespace levsim {

struct CovarianceMatrix {
  Matrix4 V = Matrix4::Zero();
  double residual = 0.0;  // ‖AV + VAᵀ + D‖ / ‖D‖ (Frobenius)
};

enum class LogBase { natural, base2, base10 };
std::string_view to_string(LogBase b);
LogBase parse_log_base(std::string_view s);

struct EntanglementResult {
  double eta_minus = 0.0;
  double sigma = 0.0;
  double E_n = 0.0;
  double detB1 = 0.0;
  double detB2 = 0.0;
  double detB3 = 0.0;
  double detV = 0.0;
};

/// Solves AV + VAᵀ = −D as the 16×16 system (I⊗A + A⊗I) vec V = −vec D.
/// Throws UnstableModel if A is not Hurwitz, SingularSystem if the solve degenerates.
CovarianceMatrix lyapunov_solve(const StateSpaceModel& m);

double lyapunov_residual(const Matrix4& A, const Matrix4& D, const Matrix4& V);

/// Integrates dV/dt = AV + VAᵀ + D from V = 0 with RK4 until
/// ‖dV/dt‖ < 1e-12‖D‖. dt <= 0 picks 0.1 / ‖A‖∞. Throws NotConverged.
CovarianceMatrix covariance_by_integration(const StateSpaceModel& m, double t_max, double dt = 0.0);
CovarianceMatrix covariance_by_integration(const Matrix4& A, const Matrix4& D, double t_max,
                                           double dt = 0.0);

/// Smallest symplectic eigenvalue of the partial transpose and E_n = max(0, −log(2η−)).
/// Throws UnphysicalCovariance for σ² < 4 det V (beyond rounding) or det V <= 0.
EntanglementResult log_negativity(const Matrix4& V, LogBase base = LogBase::natural);
inline EntanglementResult log_negativity(const CovarianceMatrix& cov, LogBase base = LogBase::natural) {
  return log_negativity(cov.V, base);
}

struct SymplecticSpectrum {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
};

/// Symplectic eigenvalues of V itself (no transpose); ≥ 1/2 for physical states.
SymplecticSpectrum symplectic_eigenvalues(const Matrix4& V);

}  // namespace levsim
