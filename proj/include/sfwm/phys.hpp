#pragma once

// Fiber dispersion, pump pulses and channel bookkeeping. Everything internal
// is strict SI: angular frequencies in rad/s, lengths in m, times in s,
// powers in W. Unit conversions live at the CLI boundary, not here.

#include <array>
#include <cstddef>

namespace sfwm {

namespace constants {
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double hbar = 1.054571817e-34;      // J*s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double two_pi = 6.283185307179586;

// FWHM = 2*sqrt(2*ln2) * sigma for a Gaussian intensity profile.
inline constexpr double gauss_fwhm_over_sigma = 2.3548200450309493;

// Peak power of a transform-limited Gaussian pulse: P0 = 2*sqrt(ln2/pi) * E / t_fwhm.
inline constexpr double gauss_peak_factor = 0.9394372786996513;
}  // namespace constants

// Dispersion of one fiber span as a Taylor series of the propagation constant
// k(w) about omega_ref: beta[n] = d^n k / dw^n, units s^n/m. beta[0] and
// beta[1] drop out of every phase-mismatch observable but are kept so the raw
// wavevector is meaningful on its own.
struct FiberSpec {
  double length_m;
  double gamma_per_w_m;        // nonlinear parameter, 1/(W*m)
  std::array<double, 5> beta;  // beta0..beta4 about omega_ref
  double omega_ref;            // expansion point, rad/s
  double temperature_k;

  FiberSpec(double length_m, double gamma_per_w_m, const std::array<double, 5>& beta,
            double omega_ref, double temperature_k);
};

// Transform-limited Gaussian pump pulse train. t_fwhm is the intensity FWHM.
struct PumpSpec {
  double omega0;       // carrier, rad/s
  double t_fwhm_s;     // intensity FWHM, s
  double p_avg_w;      // average power, W
  double rep_rate_hz;

  PumpSpec(double omega0, double t_fwhm_s, double p_avg_w, double rep_rate_hz);

  double sigma_p() const;       // spectral amplitude 1/e half-width, rad/s
  double pulse_energy_j() const { return p_avg_w / rep_rate_hz; }
  double peak_power_w() const {
    return constants::gauss_peak_factor * pulse_energy_j() / t_fwhm_s;
  }
};

// Signal/idler channel centers. Energy conservation against the pump carrier
// (omega_s0 + omega_i0 = 2*omega_p0) is enforced at construction; a pair that
// violates it would silently shift the phase-matching ridge.
struct ChannelPair {
  double omega_s0;  // rad/s
  double omega_i0;  // rad/s

  ChannelPair(double omega_s0, double omega_i0, double omega_p0);

  double pump_center() const { return 0.5 * (omega_s0 + omega_i0); }
  double detuning() const { return 0.5 * (omega_s0 - omega_i0); }  // +Omega
};

// Square sampling grid in detuning space (delta_s, delta_i) around the
// channel centers, n_points per axis spanning [-half_range, +half_range].
struct GridSpec {
  int n_points;
  double half_range_s;  // rad/s
  double half_range_i;  // rad/s

  GridSpec(int n_points, double half_range_s, double half_range_i);

  double step_s() const { return 2.0 * half_range_s / (n_points - 1); }
  double step_i() const { return 2.0 * half_range_i / (n_points - 1); }
};

// k(omega) from the Taylor series, Horner form. Throws std::out_of_range if
// omega leaves the +-10% validity window around omega_ref.
double wavevector(const FiberSpec& fiber, double omega);

// dk/dw (group slowness, s/m), same validity window.
double group_slowness(const FiberSpec& fiber, double omega);

// Spectral amplitude width sigma_p (rad/s) of a transform-limited Gaussian
// pump with intensity FWHM t_fwhm_s: sigma_p = 2*sqrt(2*ln2)/t_fwhm.
// The amplitude envelope is exp(-(dw/sigma_p)^2/... ) -- see jsa.hpp.
double sigma_from_fwhm(double t_fwhm_s);
double fwhm_from_sigma(double sigma_p);

// ITU DWDM channel center (Hz): 193.1 THz + index * 100 GHz, index in [-60, 60].
double itu_channel_freq_hz(int index);

}  // namespace sfwm
