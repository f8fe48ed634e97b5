#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "levsim/entanglement.hpp"
#include "levsim/error.hpp"
#include "levsim/spectra.hpp"
#include "levsim/steady_state.hpp"
#include "oracles.hpp"

using namespace levsim;

namespace {

StateSpaceModel fig1_model() {
  const auto d = derive_constants(SystemConfig{});
  return build_model(solve_xs(d, d.delta0, d.config.ring_offset, stability_check(d)), d);
}

StateSpaceModel stable_random(std::mt19937_64& rng) {
  for (;;) {
    auto m = build_model(oracle::random_coefficients(rng, 0.9));
    if (m.stable()) return m;
  }
}

}  // namespace

TEST_CASE("decoupled configurations are shot-noise flat") {
  SystemConfig q0;
  q0.mcp_epsilon = 0.0;
  SystemConfig c0;
  c0.ring_offset = 0.0;
  c0.ring = RingSource::charge(0.9477);
  for (const auto& cfg : {q0, c0}) {
    const auto d = derive_constants(cfg);
    const auto m = build_model(solve_xs(d, d.delta0, cfg.ring_offset, stability_check(d)), d);
    REQUIRE(m.coeffs.G == 0.0);
    for (double w : linear_grid(-3, 3, 301, d.kappa)) {
      CHECK(std::abs(output_spectrum(m, w, Quadrature::X) - 0.5) < 1e-14);
      CHECK(std::abs(output_spectrum(m, w, Quadrature::Y) - 0.5) < 1e-14);
    }
  }
}

TEST_CASE("d is the determinant and is conjugate under omega -> -omega") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    const auto c = oracle::random_coefficients(rng, 1.2);
    const Matrix4 A = drift_matrix(c);
    for (double w : {-2.5, -0.4, 0.0, 0.9, 3.1}) {
      const auto t = transfer_coefficients(c, w);
      const oracle::cd det = (oracle::cd(0, w) * Eigen::Matrix4cd::Identity() + A.cast<oracle::cd>()).determinant();
      CHECK(std::abs(t.d - det) < 1e-12 * (1 + std::abs(det)));
      CHECK(std::abs(transfer_coefficients(c, -w).d - std::conj(t.d)) < 1e-14 * (1 + std::abs(t.d)));
    }
  }
}

TEST_CASE("coefficient structure") {
  LinearCoefficients c;
  c.omega_m = 0.7;
  c.Omega_m = 0.9;
  c.gamma = 0.02;
  c.G = 0.3;
  c.delta = 0.6;
  c.kappa = 1.0;
  const double w = 0.45;
  const auto t = transfer_coefficients(c, w);
  const oracle::cd s(0.5, -w);
  const oracle::cd chim = c.omega_m * c.Omega_m - w * w - oracle::cd(0, w * c.gamma / 2);
  CHECK(std::abs(t.chi_m_inv - chim) < 1e-15);
  CHECK(std::abs(t.chi_c_inv - (c.delta * c.delta + s * s)) < 1e-15);
  CHECK(std::abs(t.a_X - c.G * c.omega_m * c.delta) < 1e-15);
  CHECK(std::abs(t.b_X - s * chim) < 1e-15);
  CHECK(std::abs(t.c_X - c.delta * chim) < 1e-15);
  CHECK(std::abs(t.a_Y - c.G * c.omega_m * s) < 1e-15);
  CHECK(std::abs(t.b_Y - (-c.delta * chim + c.omega_m * c.G * c.G)) < 1e-15);
  CHECK(std::abs(t.c_Y - s * chim) < 1e-15);
}

TEST_CASE("output spectrum matches direct inversion of the Langevin equations") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 100; ++n) {
    const auto m = stable_random(rng);
    for (double w : {-3.0, -0.8, -0.1, 0.0, 0.25, 0.7, 1.4, 4.0}) {
      const double sx = oracle::output_spectrum_by_inversion(m.A, m.D, m.coeffs.kappa, w, 2);
      const double sy = oracle::output_spectrum_by_inversion(m.A, m.D, m.coeffs.kappa, w, 3);
      CHECK(std::abs(output_spectrum(m, w, Quadrature::X) - sx) < 1e-9 * sx);
      CHECK(std::abs(output_spectrum(m, w, Quadrature::Y) - sy) < 1e-9 * sy);
    }
  }
  const auto f = fig1_model();
  for (double w : linear_grid(-3, 3, 61, f.coeffs.kappa)) {
    const double sx = oracle::output_spectrum_by_inversion(f.A, f.D, f.coeffs.kappa, w, 2);
    const double sy = oracle::output_spectrum_by_inversion(f.A, f.D, f.coeffs.kappa, w, 3);
    CHECK(std::abs(output_spectrum(f, w, Quadrature::X) - sx) < 1e-8 * sx);
    CHECK(std::abs(output_spectrum(f, w, Quadrature::Y) - sy) < 1e-8 * sy);
  }
}

TEST_CASE("even, positive, and flat at high frequency") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 50; ++n) {
    const auto m = stable_random(rng);
    for (double w : {0.1, 0.5, 1.0, 2.0}) {
      for (auto q : {Quadrature::X, Quadrature::Y}) {
        const double a = output_spectrum(m, w, q), b = output_spectrum(m, -w, q);
        CHECK(std::abs(a - b) < 1e-12 * a);
        CHECK(a > 0.0);
      }
    }
    for (auto q : {Quadrature::X, Quadrature::Y})
      CHECK(std::abs(output_spectrum(m, 1e6, q) - 0.5) < 1e-5);
  }
}

TEST_CASE("default config: output shows squeezing in both quadratures") {
  const auto m = fig1_model();
  const auto grid = linear_grid(-3, 3, 3001, m.coeffs.kappa);
  const auto table = spectrum_sweep(m, grid);
  double minx = 1e300, miny = 1e300, wx = 0, wy = 0;
  for (const auto& r : table) {
    CHECK(!r.unstable);
    CHECK(r.S_XX_norm == r.S_XX / 0.5);
    if (r.S_XX_norm < minx) { minx = r.S_XX_norm; wx = r.omega_over_kappa; }
    if (r.S_YY_norm < miny) { miny = r.S_YY_norm; wy = r.omega_over_kappa; }
  }
  CHECK(minx < 1.0);
  CHECK(miny < 1.0);
  // dips sit near the mechanical sideband
  const double wm = m.coeffs.omega_m / m.coeffs.kappa;
  CHECK(std::abs(std::abs(wx) - wm) < 0.3);
  CHECK(std::abs(std::abs(wy) - wm) < 0.3);
}

TEST_CASE("spectrum forms differ only in the cross term") {
  const auto m = fig1_model();
  const double w = 0.8 * m.coeffs.kappa;
  const double io = output_spectrum(m, w, Quadrature::X, SpectrumForm::input_output);
  const double mt = output_spectrum(m, w, Quadrature::X, SpectrumForm::maintext);
  const double sp = output_spectrum(m, w, Quadrature::X, SpectrumForm::supplement);
  CHECK(io == mt);
  CHECK(sp != io);
  CHECK(output_spectrum(m, w, Quadrature::Y, SpectrumForm::maintext) !=
        output_spectrum(m, w, Quadrature::Y, SpectrumForm::input_output));
  CHECK(parse_spectrum_form("supplement") == SpectrumForm::supplement);
  CHECK(to_string(SpectrumForm::maintext) == "maintext");
  CHECK_THROWS_AS(parse_spectrum_form("bogus"), SimError);
}

TEST_CASE("internal spectra integrate to the stationary covariance") {
  std::mt19937_64 rng(29);
  for (int n = 0; n < 5; ++n) {
    auto c = oracle::random_coefficients(rng, 0.7);
    c.gamma = std::max(c.gamma, 0.1);
    const auto m = build_model(c);
    if (!m.stable()) continue;
    const auto V = lyapunov_solve(m).V;
    for (int j = 0; j < 4; ++j) {
      const double var =
          oracle::integrate_real_line([&](double w) { return oracle::internal_spectrum(m.A, m.D, w, j); }, 1.0);
      CHECK(std::abs(var - V(j, j)) < 1e-2 * V(j, j));
    }
  }
}

TEST_CASE("grids") {
  const auto m = fig1_model();
  CHECK(spectrum_sweep(m, std::vector<double>{}).empty());
  const std::vector<double> bad{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(spectrum_sweep(m, bad), SimError);
  const auto g = linear_grid(-1, 1, 5, 2.0);
  CHECK(g == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  CHECK(linear_grid(0.3, 9, 1) == std::vector<double>{0.3});
}

TEST_CASE("1500-point sweep is fast") {
  const auto m = fig1_model();
  const auto grid = linear_grid(-3, 3, 1500, m.coeffs.kappa);
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = spectrum_sweep(m, grid);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(table.size() == 1500);
  CHECK(s < 1.0);
}
