#include "levsim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "levsim/error.hpp"

namespace levsim {

std::string_view to_string(LogBase b) {
  switch (b) {
    case LogBase::natural: return "e";
    case LogBase::base2: return "2";
    case LogBase::base10: return "10";
  }
  return "?";
}

LogBase parse_log_base(std::string_view s) {
  if (s == "e" || s == "natural") return LogBase::natural;
  if (s == "2") return LogBase::base2;
  if (s == "10") return LogBase::base10;
  throw SimError(ErrorCode::ValidationError,
                 "negativity_log_base must be e|2|10, got '" + std::string(s) + "'");
}

double lyapunov_residual(const Matrix4& A, const Matrix4& D, const Matrix4& V) {
  const double dn = D.norm();
  const Matrix4 R = A * V + V * A.transpose() + D;
  return dn > 0.0 ? R.norm() / dn : R.norm();
}

CovarianceMatrix lyapunov_solve(const StateSpaceModel& m) {
  if (!m.stable())
    throw SimError(ErrorCode::UnstableModel,
                   "drift matrix not Hurwitz (max Re lambda = " + std::to_string(m.eigen.max_real) + ")");
  using Mat16 = Eigen::Matrix<double, 16, 16>;
  using Vec16 = Eigen::Matrix<double, 16, 1>;
  // Column-major vec: vec(AV) = (I⊗A) vec V, vec(VAᵀ) = (A⊗I) vec V.
  Mat16 K = Mat16::Zero();
  for (int j = 0; j < 4; ++j) K.block<4, 4>(4 * j, 4 * j) += m.A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) K.block<4, 4>(4 * i, 4 * j) += m.A(i, j) * Matrix4::Identity();

  Vec16 rhs;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) rhs(4 * j + i) = -m.D(i, j);

  Eigen::PartialPivLU<Mat16> lu(K);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw SimError(ErrorCode::SingularSystem, "Lyapunov system near-singular (rcond = " +
                                                  std::to_string(rcond) + ")");
  Vec16 v = lu.solve(rhs);
  v += lu.solve(rhs - K * v);  // one step of iterative refinement

  CovarianceMatrix cov;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) cov.V(i, j) = v(4 * j + i);
  cov.V = 0.5 * (cov.V + cov.V.transpose()).eval();
  cov.residual = lyapunov_residual(m.A, m.D, cov.V);
  return cov;
}

CovarianceMatrix covariance_by_integration(const Matrix4& A, const Matrix4& D, double t_max, double dt) {
  const double a_norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  if (dt <= 0.0) dt = a_norm > 0.0 ? 0.1 / a_norm : t_max / 100.0;
  const Matrix4 At = A.transpose();
  auto f = [&](const Matrix4& V) -> Matrix4 { return A * V + V * At + D; };

  const double d_norm = D.norm();
  Matrix4 V = Matrix4::Zero();
  double t = 0.0;
  while (t < t_max) {
    const Matrix4 k1 = f(V);
    if (k1.norm() < 1e-12 * d_norm || (d_norm == 0.0 && V.norm() == 0.0)) {
      CovarianceMatrix cov;
      cov.V = 0.5 * (V + V.transpose());
      cov.residual = lyapunov_residual(A, D, cov.V);
      return cov;
    }
    const Matrix4 k2 = f(V + 0.5 * dt * k1);
    const Matrix4 k3 = f(V + 0.5 * dt * k2);
    const Matrix4 k4 = f(V + dt * k3);
    V += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    if (!V.allFinite()) break;
  }
  throw SimError(ErrorCode::NotConverged,
                 "covariance integration did not reach steady state by t_max = " + std::to_string(t_max));
}

CovarianceMatrix covariance_by_integration(const StateSpaceModel& m, double t_max, double dt) {
  if (!m.stable())
    throw SimError(ErrorCode::UnstableModel, "covariance integration needs a Hurwitz drift matrix");
  return covariance_by_integration(m.A, m.D, t_max, dt);
}

namespace {

double det2(const Matrix4& V, int r, int c) {
  return V(r, c) * V(r + 1, c + 1) - V(r, c + 1) * V(r + 1, c);
}

double smallest_symplectic(double sigma, double detV, bool transposed) {
  double disc = sigma * sigma - 4.0 * detV;
  if (disc < 0.0) {
    if (disc < -1e-10 * sigma * sigma)
      throw SimError(ErrorCode::UnphysicalCovariance,
                     std::string(transposed ? "partially transposed " : "") +
                         "covariance has sigma^2 < 4 det V (complex symplectic eigenvalue)");
    disc = 0.0;
  }
  // (σ − √disc)/2 rewritten as 2 detV/(σ + √disc): thermal mechanics makes
  // σ huge and the difference would cancel catastrophically.
  const double denom = sigma + std::sqrt(disc);
  if (!(denom > 0.0)) return 0.0;
  return std::sqrt(std::max(0.0, 2.0 * detV / denom));
}

}  // namespace

EntanglementResult log_negativity(const Matrix4& V, LogBase base) {
  EntanglementResult r;
  r.detB1 = det2(V, 0, 0);
  r.detB2 = det2(V, 2, 2);
  r.detB3 = det2(V, 0, 2);
  r.detV = V.determinant();
  if (!(r.detV > 0.0))
    throw SimError(ErrorCode::UnphysicalCovariance, "det V = " + std::to_string(r.detV) + " <= 0");
  r.sigma = r.detB1 + r.detB2 - 2.0 * r.detB3;
  if (V.block<2, 2>(0, 2).isZero(0.0)) {
    // Product state: separable, whatever rounding does to the local blocks.
    if (!(r.detB1 > 0.0) || !(r.detB2 > 0.0))
      throw SimError(ErrorCode::UnphysicalCovariance, "local block with non-positive determinant");
    r.eta_minus = std::min(std::sqrt(r.detB1), std::sqrt(r.detB2));
    r.E_n = 0.0;
    return r;
  }
  r.eta_minus = smallest_symplectic(r.sigma, r.detV, true);
  if (!(r.eta_minus > 0.0))
    throw SimError(ErrorCode::UnphysicalCovariance, "eta_minus = 0");
  const double two_eta = 2.0 * r.eta_minus;
  if (two_eta >= 1.0) {
    r.E_n = 0.0;
  } else {
    double ln = -std::log(two_eta);
    if (base == LogBase::base2) ln /= std::log(2.0);
    if (base == LogBase::base10) ln /= std::log(10.0);
    r.E_n = ln;
  }
  return r;
}

SymplecticSpectrum symplectic_eigenvalues(const Matrix4& V) {
  const double detV = V.determinant();
  const double delta = det2(V, 0, 0) + det2(V, 2, 2) + 2.0 * det2(V, 0, 2);
  SymplecticSpectrum s;
  s.nu_minus = smallest_symplectic(delta, detV, false);
  s.nu_plus = s.nu_minus > 0.0 ? std::sqrt(std::max(0.0, detV)) / s.nu_minus : 0.0;
  return s;
}

}  // namespace levsim
