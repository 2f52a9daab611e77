#include "sfwm/phys.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sfwm {

namespace {

// Fractional half-width of the Taylor validity window around omega_ref.
constexpr double kValidityFraction = 0.10;

void check_window(const FiberSpec& fiber, double omega, const char* what) {
  const double half = kValidityFraction * fiber.omega_ref;
  if (std::abs(omega - fiber.omega_ref) > half) {
    std::ostringstream msg;
    msg << what << ": omega = " << omega
        << " rad/s outside the dispersion validity window [" << fiber.omega_ref - half
        << ", " << fiber.omega_ref + half << "] rad/s (omega_ref +- 10%)";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

FiberSpec::FiberSpec(double length_m, double gamma_per_w_m, const std::array<double, 5>& beta,
                     double omega_ref, double temperature_k)
    : length_m(length_m),
      gamma_per_w_m(gamma_per_w_m),
      beta(beta),
      omega_ref(omega_ref),
      temperature_k(temperature_k) {
  if (!(length_m > 0.0)) throw std::invalid_argument("FiberSpec: length_m must be > 0");
  if (gamma_per_w_m < 0.0) throw std::invalid_argument("FiberSpec: gamma_per_w_m must be >= 0");
  if (!(omega_ref > 0.0)) throw std::invalid_argument("FiberSpec: omega_ref must be > 0");
  if (!(temperature_k > 0.0)) throw std::invalid_argument("FiberSpec: temperature_k must be > 0");
  for (double b : beta) {
    if (!std::isfinite(b)) throw std::invalid_argument("FiberSpec: beta coefficients must be finite");
  }
}

PumpSpec::PumpSpec(double omega0, double t_fwhm_s, double p_avg_w, double rep_rate_hz)
    : omega0(omega0), t_fwhm_s(t_fwhm_s), p_avg_w(p_avg_w), rep_rate_hz(rep_rate_hz) {
  if (!(omega0 > 0.0)) throw std::invalid_argument("PumpSpec: omega0 must be > 0");
  if (!(t_fwhm_s > 0.0)) throw std::invalid_argument("PumpSpec: t_fwhm_s must be > 0");
  if (p_avg_w < 0.0) throw std::invalid_argument("PumpSpec: p_avg_w must be >= 0");
  if (!(rep_rate_hz > 0.0)) throw std::invalid_argument("PumpSpec: rep_rate_hz must be > 0");
}

double PumpSpec::sigma_p() const { return sigma_from_fwhm(t_fwhm_s); }

ChannelPair::ChannelPair(double omega_s0, double omega_i0, double omega_p0)
    : omega_s0(omega_s0), omega_i0(omega_i0) {
  if (!(omega_s0 > 0.0) || !(omega_i0 > 0.0) || !(omega_p0 > 0.0))
    throw std::invalid_argument("ChannelPair: frequencies must be > 0");
  if (omega_s0 <= omega_i0)
    throw std::invalid_argument("ChannelPair: omega_s0 must exceed omega_i0 (signal is the blue channel)");
  const double mismatch = std::abs(omega_s0 + omega_i0 - 2.0 * omega_p0);
  if (mismatch > 1e-9 * 2.0 * omega_p0) {
    std::ostringstream msg;
    msg << "ChannelPair: omega_s0 + omega_i0 deviates from 2*omega_p0 by " << mismatch
        << " rad/s (relative " << mismatch / (2.0 * omega_p0)
        << "); channels must conserve energy against the pump carrier";
    throw std::invalid_argument(msg.str());
  }
}

GridSpec::GridSpec(int n_points, double half_range_s, double half_range_i)
    : n_points(n_points), half_range_s(half_range_s), half_range_i(half_range_i) {
  if (n_points < 16 || n_points % 2 != 0)
    throw std::invalid_argument("GridSpec: n_points must be even and >= 16");
  if (!(half_range_s > 0.0) || !(half_range_i > 0.0))
    throw std::invalid_argument("GridSpec: half ranges must be > 0");
}

double wavevector(const FiberSpec& fiber, double omega) {
  check_window(fiber, omega, "wavevector");
  const double x = omega - fiber.omega_ref;
  // Horner over beta[n]/n!: k = b0 + x(b1 + x(b2/2 + x(b3/6 + x b4/24)))
  double acc = fiber.beta[4] / 24.0;
  acc = fiber.beta[3] / 6.0 + x * acc;
  acc = fiber.beta[2] / 2.0 + x * acc;
  acc = fiber.beta[1] + x * acc;
  return fiber.beta[0] + x * acc;
}

double group_slowness(const FiberSpec& fiber, double omega) {
  check_window(fiber, omega, "group_slowness");
  const double x = omega - fiber.omega_ref;
  // d/dw of the series above: b1 + x(b2 + x(b3/2 + x b4/6))
  double acc = fiber.beta[4] / 6.0;
  acc = fiber.beta[3] / 2.0 + x * acc;
  acc = fiber.beta[2] + x * acc;
  return fiber.beta[1] + x * acc;
}

double sigma_from_fwhm(double t_fwhm_s) {
  if (!(t_fwhm_s > 0.0)) throw std::domain_error("sigma_from_fwhm: t_fwhm_s must be > 0");
  return constants::gauss_fwhm_over_sigma / t_fwhm_s;
}

double fwhm_from_sigma(double sigma_p) {
  if (!(sigma_p > 0.0)) throw std::domain_error("fwhm_from_sigma: sigma_p must be > 0");
  return constants::gauss_fwhm_over_sigma / sigma_p;
}

double itu_channel_freq_hz(int index) {
  if (index < -60 || index > 60)
    throw std::out_of_range("itu_channel_freq_hz: index must lie in [-60, 60]");
  return 193.1e12 + index * 100e9;
}

}  // namespace sfwm
