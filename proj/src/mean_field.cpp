#include "levsim/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "levsim/error.hpp"

namespace levsim {

using constants::hbar;

namespace {

struct Rhs {
  double k, g, kappa, drive, mass, delta0, gamma;
  double optical_force;  // ħgk
  double field_coeff;    // q Q k_e / R³
  double c0, inv_R;

  MeanFieldState operator()(const MeanFieldState& s) const {
    const double ckx = std::cos(k * s.x);
    const double skx = std::sin(k * s.x);
    const double n = std::norm(s.a);
    // Ring term enters as +q dφ/dx = −q E_x(x): the sign that makes the
    // linearized ring spring restoring and matches the force balance.
    const double shift = c0 + s.x;
    const double u = shift * inv_R;
    const double w = 1.0 + u * u;
    const double qE = field_coeff * shift / (w * std::sqrt(w));

    MeanFieldState ds;
    ds.x = s.p / mass;
    ds.p = -optical_force * n * 2.0 * skx * ckx - qE - 0.5 * gamma * s.p;
    const std::complex<double> i(0.0, 1.0);
    ds.a = (i * (delta0 + g * ckx * ckx) - 0.5 * kappa) * s.a - i * drive;
    return ds;
  }
};

Rhs make_rhs(const DerivedParams& d, double delta0, double c0, double gamma) {
  const double R = d.config.ring_radius;
  return Rhs{d.k,
             d.g,
             d.kappa,
             d.drive,
             d.mass,
             delta0,
             gamma,
             hbar * d.g * d.k,
             d.q_mcp * d.ring_charge * constants::coulomb_k / (R * R * R),
             c0,
             1.0 / R};
}

MeanFieldState axpy(const MeanFieldState& s, double h, const MeanFieldState& ds) {
  return {s.x + h * ds.x, s.p + h * ds.p, s.a + h * ds.a};
}

double small_oscillation_frequency(const DerivedParams& d, double delta0) {
  const double delta = delta0 + d.g;
  const double a2 = 4.0 * d.drive * d.drive / (4.0 * delta * delta + d.kappa * d.kappa);
  const double w2 = (2.0 * hbar * d.g * d.k * d.k * a2 + std::max(d.A_q, 0.0)) / d.mass;
  return std::sqrt(w2);
}

}  // namespace

MeanFieldState mean_field_rhs(const DerivedParams& d, double delta0, double c0, double gamma,
                              const MeanFieldState& s) {
  return make_rhs(d, delta0, c0, gamma)(s);
}

MeanFieldState adiabatic_state(const DerivedParams& d, double delta0, double x) {
  const double c = std::cos(d.k * x);
  const std::complex<double> i(0.0, 1.0);
  MeanFieldState s;
  s.x = x;
  s.a = i * d.drive / (i * (delta0 + d.g * c * c) - 0.5 * d.kappa);
  return s;
}

double oracle_damping(const DerivedParams& d) { return 0.3 * d.kappa; }

double default_mean_field_step(const DerivedParams& d, double delta0) {
  const double w = small_oscillation_frequency(d, delta0);
  return std::min(0.01 / d.kappa, w > 0.0 ? 0.01 / w : std::numeric_limits<double>::infinity());
}

MeanFieldResult integrate_mean_field(const DerivedParams& d, double delta0, double c0,
                                     const MeanFieldState& initial, double t_max, double dt,
                                     const MeanFieldOptions& opts) {
  if (dt <= 0.0) dt = default_mean_field_step(d, delta0);
  if (!(dt * d.kappa < 0.1))
    throw SimError(ErrorCode::InvalidArgument, "mean-field step too large: dt*kappa = " +
                                                   std::to_string(dt * d.kappa) + " (need < 0.1)");
  if (!(t_max > 0.0)) throw SimError(ErrorCode::InvalidArgument, "t_max must be > 0");

  const double w_est = small_oscillation_frequency(d, delta0);
  double gamma = 0.0;
  if (opts.damping_override) {
    gamma = *opts.damping_override;
  } else {
    const double a2 = 4.0 * d.drive * d.drive /
                      (4.0 * (delta0 + d.g) * (delta0 + d.g) + d.kappa * d.kappa);
    gamma = d.damping(std::sqrt(2.0 * hbar * d.g * d.k * d.k * a2 / d.mass)).gamma;
  }
  const Rhs rhs = make_rhs(d, delta0, c0, gamma);

  const double x_tol = opts.x_tolerance > 0.0 ? opts.x_tolerance : 1e-6 * d.config.wavelength;
  const double period = w_est > 0.0 ? 2.0 * std::numbers::pi / w_est : 1.0 / d.kappa;
  const double window = std::max(8.0 * period, 50.0 / d.kappa);
  const auto window_steps = static_cast<std::size_t>(std::ceil(window / dt));
  const auto max_steps = static_cast<std::size_t>(std::ceil(t_max / dt));

  MeanFieldResult res;
  res.dt = dt;
  res.gamma = gamma;
  MeanFieldState s = initial;
  std::size_t step = 0;
  if (opts.record_every) res.trajectory.emplace_back(0.0, s);

  while (step < max_steps) {
    double xmin = s.x, xmax = s.x;
    const double a0 = std::abs(s.a);
    double amin = a0, amax = a0;
    double xsum = 0.0, psum = 0.0, asum = 0.0;
    std::complex<double> acsum{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t w = 0; w < window_steps && step < max_steps; ++w, ++step) {
      const auto k1 = rhs(s);
      const auto k2 = rhs(axpy(s, 0.5 * dt, k1));
      const auto k3 = rhs(axpy(s, 0.5 * dt, k2));
      const auto k4 = rhs(axpy(s, dt, k3));
      s.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
      s.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
      s.a += dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
      if (!std::isfinite(s.x) || !std::isfinite(s.p) || !std::isfinite(s.a.real()))
        throw SimError(ErrorCode::NotConverged, "mean-field trajectory diverged");

      const double aa = std::abs(s.a);
      xmin = std::min(xmin, s.x);
      xmax = std::max(xmax, s.x);
      amin = std::min(amin, aa);
      amax = std::max(amax, aa);
      xsum += s.x;
      psum += s.p;
      asum += aa;
      acsum += s.a;
      ++count;
      if (opts.record_every && (step + 1) % opts.record_every == 0)
        res.trajectory.emplace_back(static_cast<double>(step + 1) * dt, s);
    }
    if (count == 0) break;
    const double n = static_cast<double>(count);
    res.x_mean = xsum / n;
    res.p_mean = psum / n;
    res.abs_a_mean = asum / n;
    res.a_mean = acsum / n;
    res.steps = step;
    res.t_end = static_cast<double>(step) * dt;
    const bool full_window = count == window_steps;
    if (full_window && xmax - xmin < x_tol && (amax - amin) < opts.amplitude_tolerance * res.abs_a_mean)
      return res;
  }
  throw SimError(ErrorCode::NotConverged,
                 "mean-field envelope did not contract by t_max = " + std::to_string(t_max) + " s");
}

}  // namespace levsim
