#include "levsim/spectra.hpp"

#include <cmath>
#include <string>

#include "levsim/error.hpp"

namespace levsim {

std::string_view to_string(SpectrumForm f) {
  switch (f) {
    case SpectrumForm::input_output: return "input_output";
    case SpectrumForm::supplement: return "supplement";
    case SpectrumForm::maintext: return "maintext";
  }
  return "unknown";
}

SpectrumForm parse_spectrum_form(std::string_view s) {
  if (s == "input_output") return SpectrumForm::input_output;
  if (s == "supplement") return SpectrumForm::supplement;
  if (s == "maintext") return SpectrumForm::maintext;
  throw SimError(ErrorCode::ValidationError,
                 "spectrum_form must be input_output|supplement|maintext, got '" + std::string(s) + "'");
}

TransferCoefficients transfer_coefficients(const LinearCoefficients& c, double omega) {
  const Complex i(0.0, 1.0);
  const Complex s = c.kappa / 2.0 - i * omega;
  TransferCoefficients t;
  t.chi_c_inv = c.delta * c.delta + s * s;
  t.chi_m_inv = c.omega_m * c.Omega_m - omega * omega - i * omega * c.gamma / 2.0;
  t.d = t.chi_c_inv * t.chi_m_inv - c.G * c.G * c.omega_m * c.delta;
  t.a_X = c.G * c.omega_m * c.delta;
  t.b_X = s * t.chi_m_inv;
  t.c_X = c.delta * t.chi_m_inv;
  t.a_Y = c.G * c.omega_m * s;
  t.b_Y = -c.delta * t.chi_m_inv + c.omega_m * c.G * c.G;
  t.c_Y = s * t.chi_m_inv;
  return t;
}

double output_spectrum(const StateSpaceModel& m, double omega, Quadrature q, SpectrumForm form) {
  const auto& c = m.coeffs;
  const auto t = transfer_coefficients(c, omega);
  const Complex d_minus = transfer_coefficients(c, -omega).d;
  const double dd = std::norm(t.d);
  if (!(dd > 0.0) || !std::isfinite(dd))
    throw SimError(ErrorCode::NonFiniteResult,
                   "|d(omega)|^2 = " + std::to_string(dd) + " at omega = " + std::to_string(omega));

  const bool x = q == Quadrature::X;
  const Complex& a = x ? t.a_X : t.a_Y;
  const Complex& b = x ? t.b_X : t.b_Y;
  const Complex& cc = x ? t.c_X : t.c_Y;
  const double k = c.kappa;

  const double thermal = k * c.Gamma * std::norm(a) / dd;
  const double shot = 0.5 * k * k * (std::norm(b) + std::norm(cc)) / dd;
  double cross = 0.0;
  switch (form) {
    case SpectrumForm::input_output:
      cross = -k * std::real((x ? b : cc) * d_minus) / dd;
      break;
    case SpectrumForm::supplement:
      cross = -0.5 * k * std::real((x ? b : cc) * d_minus) / dd;
      break;
    case SpectrumForm::maintext:
      cross = -k * std::real(b * d_minus) / dd;
      break;
  }
  const double S = kSpectrumBaseline + thermal + shot + cross;
  if (!std::isfinite(S))
    throw SimError(ErrorCode::NonFiniteResult, "spectrum not finite at omega = " + std::to_string(omega));
  return S;
}

SpectrumRow spectrum_row(const StateSpaceModel& m, double omega, SpectrumForm form) {
  SpectrumRow r;
  r.omega = omega;
  r.omega_over_kappa = omega / m.coeffs.kappa;
  r.S_XX = output_spectrum(m, omega, Quadrature::X, form);
  r.S_YY = output_spectrum(m, omega, Quadrature::Y, form);
  r.S_XX_norm = r.S_XX / kSpectrumBaseline;
  r.S_YY_norm = r.S_YY / kSpectrumBaseline;
  r.unstable = !m.stable();
  return r;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n, double unit) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo * unit;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i)
    g[i] = (lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)) * unit;
  return g;
}

}  // namespace levsim
