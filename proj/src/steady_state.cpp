#include "levsim/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "levsim/error.hpp"

namespace levsim {

using constants::hbar;
using std::numbers::pi;

double effective_detuning(const DerivedParams& d, double delta0, double x) {
  const double c = std::cos(d.k * x);
  return delta0 + d.g * c * c;
}

double steady_state_force(const DerivedParams& d, double delta0, double c0, double A_q, double x) {
  const double delta = effective_detuning(d, delta0, x);
  const double E2 = d.drive * d.drive;
  return A_q * (c0 + x) +
         hbar * d.g * d.k * E2 * std::sin(2.0 * d.k * x) / (d.kappa * d.kappa / 4.0 + delta * delta);
}

double steady_state_force_scale(const DerivedParams& d, double c0, double A_q) {
  const double optical = hbar * d.g * d.k * d.drive * d.drive * 4.0 / (d.kappa * d.kappa);
  return std::max(std::abs(A_q * c0), optical);
}

double steady_amplitude(const DerivedParams& d, double delta_eff) {
  return std::sqrt(4.0 * d.drive * d.drive / (4.0 * delta_eff * delta_eff + d.kappa * d.kappa));
}

double mechanical_frequency(const DerivedParams& d, double a_s, double x_s) {
  const double c2 = std::cos(2.0 * d.k * x_s);
  if (c2 < 0.0)
    throw SimError(ErrorCode::UnstableTrap,
                   "cos(2k x_s) = " + std::to_string(c2) + " < 0 at x_s = " + std::to_string(x_s));
  return std::sqrt(2.0 * hbar * d.g * d.k * d.k * a_s * a_s * c2 / d.mass);
}

OperatingPoint make_operating_point(const DerivedParams& d, double delta0, double c0, double A_q,
                                    double x_s, bool exact_spring) {
  OperatingPoint op;
  op.x_s = x_s;
  op.delta0 = delta0;
  op.ring_offset = c0;
  op.delta_eff = effective_detuning(d, delta0, x_s);
  op.a_s = steady_amplitude(d, op.delta_eff);
  op.omega_m = mechanical_frequency(d, op.a_s, x_s);
  if (!(op.omega_m > 0.0))
    throw SimError(ErrorCode::UnstableTrap, "linearization collapses: omega_m = 0");
  if (exact_spring) {
    SystemConfig cfg = d.config;
    cfg.ring_offset = c0;
    const double approx = electrostatic_spring(cfg, d.ring_charge, x_s, false);
    const double exact = electrostatic_spring(cfg, d.ring_charge, x_s, true);
    op.A_q = approx != 0.0 ? A_q * exact / approx : 0.0;
  } else {
    op.A_q = A_q;
  }
  op.Omega_m = op.omega_m + op.A_q / (d.mass * op.omega_m);
  op.G = std::sqrt(2.0 * hbar / (d.mass * op.omega_m)) * d.k * d.g * op.a_s *
         std::sin(2.0 * d.k * x_s);
  op.residual = steady_state_force(d, delta0, c0, A_q, x_s);
  op.residual_relative = std::abs(op.residual) / steady_state_force_scale(d, c0, A_q);
  return op;
}

namespace {

// Uniform scan over the open interval (−h, h) followed by bisection of every
// sign change. The grid is symmetric so x = 0 is sampled exactly.
template <class F>
std::vector<double> bracket_roots(F&& f, double h, std::size_t n, double tol) {
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;
  const std::ptrdiff_t mid = static_cast<std::ptrdiff_t>(n / 2);
  const double step = h / static_cast<double>(mid);
  std::vector<double> xs(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - mid) * step;
    fs[i] = f(xs[i]);
  }
  xs.front() = -h;
  xs.back() = h;

  const double width_tol = tol * 2.0 * h;
  std::vector<double> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const bool interior = i > 0 && i + 1 < n;
    if (fs[i] == 0.0 && interior) roots.push_back(xs[i]);
    if (i + 1 == n || fs[i] == 0.0 || fs[i + 1] == 0.0) continue;
    if (std::signbit(fs[i]) == std::signbit(fs[i + 1])) continue;

    double a = xs[i], b = xs[i + 1], fa = fs[i];
    for (int it = 0; it < 400 && (b - a) > width_tol; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = f(m);
      if (fm == 0.0) { a = b = m; break; }
      if (std::signbit(fm) == std::signbit(fa)) { a = m; fa = fm; } else { b = m; }
    }
    const double m = 0.5 * (a + b);
    double best = m, fbest = std::abs(f(m));
    for (double cand : {a, b}) {
      const double fc = std::abs(f(cand));
      if (fc < fbest) { best = cand; fbest = fc; }
    }
    if (std::abs(best) < h) roots.push_back(best);
  }
  std::sort(roots.begin(), roots.end(), [](double l, double r) {
    return std::abs(l) < std::abs(r) || (std::abs(l) == std::abs(r) && l < r);
  });
  return roots;
}

}  // namespace

std::vector<double> steady_state_roots(const DerivedParams& d, double delta0, double c0,
                                       const SolveOptions& opts) {
  const double h = pi / (4.0 * d.k);
  auto f = [&](double x) { return steady_state_force(d, delta0, c0, d.A_q, x); };
  return bracket_roots(f, h, opts.grid_points, opts.bisection_tolerance);
}

std::vector<OperatingPoint> candidate_operating_points(const DerivedParams& d, double delta0,
                                                       double c0, const SolveOptions& opts) {
  std::vector<OperatingPoint> out;
  for (double x : steady_state_roots(d, delta0, c0, opts)) {
    try {
      out.push_back(make_operating_point(d, delta0, c0, d.A_q, x, opts.exact_spring));
    } catch (const SimError& e) {
      if (e.code() != ErrorCode::UnstableTrap) throw;
    }
  }
  return out;
}

OperatingPoint solve_xs(const DerivedParams& d, double delta0, double c0,
                        const StabilityCheck& is_stable, const SolveOptions& opts) {
  if (!(d.drive > 0.0)) throw SimError(ErrorCode::InvalidArgument, "drive amplitude must be > 0");
  const auto candidates = candidate_operating_points(d, delta0, c0, opts);
  if (candidates.empty())
    throw SimError(ErrorCode::NoRootInInterval,
                   "no admissible root of the force balance for delta0/kappa = " +
                       std::to_string(delta0 / d.kappa));
  std::size_t want = opts.root_index.value_or(0);
  for (const auto& op : candidates) {
    if (!is_stable || is_stable(op)) {
      if (want == 0) return op;
      --want;
    }
  }
  throw SimError(ErrorCode::AllRootsUnstable,
                 std::to_string(candidates.size()) + " root(s) found, none with a Hurwitz drift matrix" +
                     (opts.root_index ? " at the requested index" : ""));
}

ResonanceSides resonance_condition(const DerivedParams& d, double delta0, double x) {
  const double delta = effective_detuning(d, delta0, x);
  ResonanceSides s;
  s.lhs = 8.0 * hbar * d.g * d.k * d.k * d.drive * d.drive * std::cos(2.0 * d.k * x) /
          (d.kappa * d.kappa + 4.0 * delta * delta);
  s.rhs = d.mass * delta * delta;
  return s;
}

ResonantSolution solve_resonant_ring_charge(const DerivedParams& d, double delta0, double c0,
                                            double q, const StabilityCheck& is_stable,
                                            const SolveOptions& opts) {
  if (q == 0.0) throw SimError(ErrorCode::InvalidArgument, "resonant ring charge needs q != 0");
  const double h = pi / (4.0 * d.k);
  auto resonance = [&](double x) {
    const auto s = resonance_condition(d, delta0, x);
    return s.lhs - s.rhs;
  };
  const auto roots = bracket_roots(resonance, h, opts.grid_points, opts.bisection_tolerance);

  struct Candidate {
    double x;
    double Q;
  };
  std::vector<Candidate> candidates;
  const double E2 = d.drive * d.drive;
  const double R = d.config.ring_radius;
  for (double x : roots) {
    if (!(effective_detuning(d, delta0, x) > 0.0)) continue;  // Stokes side only
    if (c0 + x == 0.0) continue;
    const double delta = effective_detuning(d, delta0, x);
    const double optical =
        4.0 * hbar * d.g * d.k * std::sin(2.0 * d.k * x) * E2 / (d.kappa * d.kappa + 4.0 * delta * delta);
    const double A_q = -optical / (x + c0);
    const double Q = A_q * R * R * R / (constants::coulomb_k * q);
    candidates.push_back({x, Q});
  }
  if (candidates.empty())
    throw SimError(ErrorCode::NoResonantSolution,
                   "resonance condition has no Stokes-side root for delta0/kappa = " +
                       std::to_string(delta0 / d.kappa));
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
    if (std::abs(l.x) != std::abs(r.x)) return std::abs(l.x) < std::abs(r.x);
    return l.Q > 0.0 && r.Q <= 0.0;
  });

  std::size_t want = opts.root_index.value_or(0);
  for (const auto& c : candidates) {
    DerivedParams local = d;
    local.config.ring_offset = c0;
    local.config.ring = RingSource::charge(c.Q);
    local.ring_charge = c.Q;
    local.A_q = electrostatic_spring(local.config, c.Q, 0.0, false);
    OperatingPoint op;
    try {
      op = make_operating_point(local, delta0, c0, local.A_q, c.x, opts.exact_spring);
    } catch (const SimError& e) {
      if (e.code() == ErrorCode::UnstableTrap) continue;
      throw;
    }
    if (is_stable && !is_stable(op)) continue;
    if (want > 0) { --want; continue; }

    ResonantSolution sol;
    sol.x_s = c.x;
    sol.ring_charge = c.Q;
    sol.field = ring_field(c.x, local.config, c.Q);
    sol.residual_force = op.residual_relative;
    const auto s = resonance_condition(d, delta0, c.x);
    sol.residual_resonance = std::abs(s.lhs - s.rhs) / std::max(std::abs(s.lhs), std::abs(s.rhs));
    sol.op = op;
    return sol;
  }
  throw SimError(ErrorCode::UnstableResonance,
                 "no resonant solution with a Hurwitz drift matrix for delta0/kappa = " +
                     std::to_string(delta0 / d.kappa));
}

}  // namespace levsim
