#include "levsim/linear_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levsim/error.hpp"

namespace levsim {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "unknown";
}

Matrix4 drift_matrix(const LinearCoefficients& c) {
  Matrix4 A = Matrix4::Zero();
  A(0, 1) = c.omega_m;
  A(1, 0) = -c.Omega_m;
  A(1, 1) = -c.gamma / 2.0;
  A(1, 2) = -c.G;
  A(2, 2) = -c.kappa / 2.0;
  A(2, 3) = c.delta;
  A(3, 2) = -c.delta;
  A(3, 3) = -c.kappa / 2.0;
  A(3, 0) = -c.G;
  return A;
}

Matrix4 diffusion_matrix(const LinearCoefficients& c) {
  Matrix4 D = Matrix4::Zero();
  D(1, 1) = c.Gamma;
  D(2, 2) = c.kappa / 2.0;
  D(3, 3) = c.kappa / 2.0;
  return D;
}

StateSpaceModel build_model(const LinearCoefficients& c) {
  StateSpaceModel m;
  m.coeffs = c;
  m.A = drift_matrix(c);
  m.D = diffusion_matrix(c);
  m.routh = routh_hurwitz(c);
  m.eigen = eigenvalue_stability(c);
  return m;
}

StateSpaceModel build_model(const OperatingPoint& op, const DerivedParams& derived) {
  const Damping damp = derived.damping(op.omega_m);
  LinearCoefficients c;
  c.omega_m = op.omega_m;
  c.Omega_m = op.Omega_m;
  c.gamma = damp.gamma;
  c.G = op.G;
  c.delta = op.delta_eff;
  c.kappa = derived.kappa;
  c.Gamma = damp.Gamma_diff;
  StateSpaceModel m = build_model(c);
  m.op = op;
  return m;
}

std::array<double, 4> characteristic_polynomial(const LinearCoefficients& c) {
  // det(λI − A) = (λ² + (γ/2)λ + ω_mΩ_m)((λ + κ/2)² + Δ²) − ω_mΔG²
  const double a1 = c.gamma / 2.0;
  const double a0 = c.omega_m * c.Omega_m;
  const double c1 = c.kappa;
  const double c0 = c.kappa * c.kappa / 4.0 + c.delta * c.delta;
  return {a1 + c1, a0 + a1 * c1 + c0, a0 * c1 + a1 * c0,
          a0 * c0 - c.omega_m * c.delta * c.G * c.G};
}

RouthHurwitz routh_hurwitz(const LinearCoefficients& c) {
  using ld = long double;
  const ld wm = c.omega_m, Om = c.Omega_m, g = c.gamma, k = c.kappa, D = c.delta, G = c.G;
  const ld D4 = 4 * D * D;

  const ld s1_pos = wm * Om * (D4 + k * k);
  const ld s1_neg = 4 * G * G * D * wm;
  const ld S1 = s1_pos - s1_neg;

  const ld brace1 = k * (D4 + (g + k) * (g + k)) + 2 * g * wm * Om;
  const ld brace2 = g * (D4 + k * k) + 8 * k * wm * Om;
  const ld t1 = brace1 * brace2;
  const ld t2 = 2 * (g + 2 * k) * (g + 2 * k) * S1;
  const ld S2 = 2 * (g + 2 * k) * (t1 - t2);

  RouthHurwitz r;
  r.S1 = static_cast<double>(S1);
  r.S2 = static_cast<double>(S2);
  const ld eps = 1e-12L;
  const bool s1_marginal = std::abs(S1) <= eps * std::max(std::abs(s1_pos), std::abs(s1_neg));
  const ld t2_scale = 2 * (g + 2 * k) * (g + 2 * k) * std::max(std::abs(s1_pos), std::abs(s1_neg));
  const bool s2_marginal = std::abs(t1 - t2) <= eps * std::max(std::abs(t1), t2_scale);
  if (s1_marginal || s2_marginal) {
    r.verdict = (S1 < 0 && !s1_marginal) || (S2 < 0 && !s2_marginal) ? Verdict::unstable
                                                                     : Verdict::marginal;
  } else {
    r.verdict = S1 > 0 && S2 > 0 ? Verdict::stable : Verdict::unstable;
  }
  return r;
}

namespace {

using cd = std::complex<double>;

cd eval_monic(const std::array<double, 4>& b, cd z) {
  return (((z + b[0]) * z + b[1]) * z + b[2]) * z + b[3];
}

cd eval_monic_derivative(const std::array<double, 4>& b, cd z) {
  return ((4.0 * z + 3.0 * b[0]) * z + 2.0 * b[1]) * z + b[2];
}

}  // namespace

EigenStability eigenvalue_stability(const LinearCoefficients& c) {
  const auto b = characteristic_polynomial(c);
  // Rescale λ = s μ so the coefficients are O(1).
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s = std::max(s, std::pow(std::abs(b[i]), 1.0 / (i + 1)));
  if (!(s > 0.0) || !std::isfinite(s)) {
    if (!std::isfinite(s)) throw SimError(ErrorCode::IterationDiverged, "non-finite drift matrix");
    EigenStability r;  // A == 0: all eigenvalues zero
    return r;
  }
  const std::array<double, 4> bs{b[0] / s, b[1] / (s * s), b[2] / (s * s * s), b[3] / (s * s * s * s)};

  std::array<cd, 4> z;
  const cd seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < 4; ++i) z[i] = z[i - 1] * seed;

  EigenStability r;
  constexpr int max_iter = 5000;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    double max_step = 0.0;
    for (int i = 0; i < 4; ++i) {
      cd denom(1.0, 0.0);
      for (int j = 0; j < 4; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      if (denom == cd(0.0, 0.0)) denom = cd(1e-300, 0.0);
      const cd step = eval_monic(bs, z[i]) / denom;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    r.iterations = it + 1;
    if (!std::isfinite(max_step)) break;
    if (max_step < 1e-15) {
      converged = true;
      break;
    }
  }
  for (auto& zi : z) {
    for (int n = 0; n < 3; ++n) {
      const cd dp = eval_monic_derivative(bs, zi);
      if (std::abs(dp) < 1e-300) break;
      const cd next = zi - eval_monic(bs, zi) / dp;
      if (std::abs(eval_monic(bs, next)) < std::abs(eval_monic(bs, zi))) zi = next;
    }
  }
  const double coeff_norm = 1.0 + std::abs(bs[0]) + std::abs(bs[1]) + std::abs(bs[2]) + std::abs(bs[3]);
  double worst = 0.0;
  for (const auto& zi : z) worst = std::max(worst, std::abs(eval_monic(bs, zi)));
  if (!converged && !(worst < 1e-10 * coeff_norm))
    throw SimError(ErrorCode::IterationDiverged,
                   "Durand-Kerner did not converge (residual " + std::to_string(worst) + ")");

  r.max_real = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    r.eigenvalues[i] = z[i] * s;
    r.max_real = std::max(r.max_real, r.eigenvalues[i].real());
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](const cd& l, const cd& rr) {
    return l.real() != rr.real() ? l.real() > rr.real() : l.imag() > rr.imag();
  });
  r.stable = r.max_real < 0.0;
  return r;
}

StabilityCheck stability_check(const DerivedParams& derived) {
  return [derived](const OperatingPoint& op) { return build_model(op, derived).stable(); };
}

}  // namespace levsim
