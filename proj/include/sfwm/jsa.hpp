#pragma once

// Joint spectral amplitude of a pulse-pumped four-wave-mixing pair source.
//
// The JSA factorizes as f(w_s, w_i) = pump_envelope * phase_matching. Two
// routes to a sampled JSA are kept deliberately separate:
//
//   build_jsa        evaluates the pump envelope and the exact polynomial
//                    phase mismatch of a FiberSpec (sinc or Gaussian-
//                    approximated phase matching);
//   build_gauss_jsa  samples the quadratic-form model
//                    f = exp(-A ds^2 - B di^2 - 2 C ds di)
//                    whose coefficients come from gauss_coeffs().
//
// The quadratic model is what the closed-form purity and the pump-width
// optimum are derived from, so tests can play the two routes against each
// other instead of trusting a single implementation.

#include <Eigen/Dense>

#include "sfwm/phys.hpp"

namespace sfwm {

enum class PhaseMatchMode { sinc, gauss };

// Width parameter of the Gaussian stand-in exp(-alpha^2 dk^2 L^2) for
// sinc(dk L / 2): alpha = 0.220 matches the amplitude FWHM of the two curves.
inline constexpr double default_alpha = 0.220;

// Quadratic-form coefficients of the Gaussian JSA model, all in s^2:
// intensity S ~ exp(-2 A ds^2 - 2 B di^2 - 4 C ds di). With group-slowness
// walk-offs tau_s = k'_p - k'_s, tau_i = k'_p - k'_i (evaluated at the
// channel centers) and sigma_p the pump amplitude width,
//   A = 1/sigma_p^2 + alpha^2 L^2 tau_s^2
//   B = 1/sigma_p^2 + alpha^2 L^2 tau_i^2
//   C = 1/sigma_p^2 + alpha^2 L^2 tau_s tau_i
struct GaussJsaCoeffs {
  double a;  // s^2
  double b;  // s^2
  double c;  // s^2, may have either sign

  GaussJsaCoeffs(double a, double b, double c);

  // 1-sigma widths of the spectral intensity marginals.
  double marginal_std_signal() const;  // rad/s
  double marginal_std_idler() const;   // rad/s
};

// Spectral filter centered on an absolute frequency. fwhm is the intensity
// FWHM. Super-Gaussian transmission is exp(-ln2 * (2 dw / fwhm)^(2 order));
// order 1 recovers the plain Gaussian, order 3 is a reasonable stand-in for a
// flat-top DWDM passband.
struct FilterSpec {
  enum class Shape { gaussian, supergaussian, rectangular };

  double center;  // rad/s
  double fwhm;    // rad/s
  Shape shape = Shape::supergaussian;
  int order = 3;  // super-Gaussian order, ignored for the other shapes

  FilterSpec(double center, double fwhm, Shape shape = Shape::supergaussian, int order = 3);

  // Amplitude transmission sqrt(T) at absolute frequency omega.
  double amplitude(double omega) const;
};

// Sampled JSA on a detuning grid. amp(j, k) is the real amplitude at
// delta_s(j), delta_i(k). Discrete normalization (sum of squares = 1) is
// used throughout; quadrature weights cancel in every ratio derived from it.
struct JsaGrid {
  Eigen::MatrixXd amp;
  Eigen::VectorXd delta_s;  // rad/s, ascending
  Eigen::VectorXd delta_i;  // rad/s, ascending
  ChannelPair channel;
  double edge_mass = 0.0;             // intensity fraction in outermost 2 rows/cols
  double heralding_efficiency = 1.0;  // intensity fraction kept by filters

  JsaGrid(Eigen::MatrixXd amp, Eigen::VectorXd delta_s, Eigen::VectorXd delta_i,
          ChannelPair channel);

  double step_s() const { return delta_s(1) - delta_s(0); }
  double step_i() const { return delta_i(1) - delta_i(0); }
  // True when more than 1e-3 of the intensity sits in the outermost samples,
  // i.e. the grid clips the state it is supposed to represent.
  bool range_warning() const { return edge_mass > 1e-3; }
};

// Pump amplitude envelope at two-photon sum detuning delta_sum = ds + di:
// exp(-(delta_sum / sigma_p)^2), so the envelope intensity is
// exp(-2 (delta_sum / sigma_p)^2) and sigma_p is the amplitude 1/e half-width.
double pump_envelope_amp(double delta_sum, double sigma_p);

// Exact phase mismatch dk = 2 k(w_p) - k(w_s) - k(w_i) + 2 gamma P_peak at
// w_p = (w_s + w_i)/2, in 1/m.
double phase_mismatch(const FiberSpec& fiber, const PumpSpec& pump, double omega_s,
                      double omega_i);

// Phase-matching amplitude for a given mismatch: sinc(dk L / 2) or the
// Gaussian stand-in exp(-alpha^2 dk^2 L^2).
double phase_matching_amp(double delta_k, double length_m, PhaseMatchMode mode,
                          double alpha = default_alpha);

GaussJsaCoeffs gauss_coeffs(const FiberSpec& fiber, const PumpSpec& pump,
                            const ChannelPair& channel, double alpha = default_alpha);

// 1 + sigma_p^2 alpha^2 L^2 tau_s tau_i. Zero iff the Gaussian-model JSA
// factorizes (equivalently iff gauss_coeffs().c vanishes).
double factorability_residual(const FiberSpec& fiber, const ChannelPair& channel,
                              double sigma_p, double alpha = default_alpha);

// Pump intensity FWHM (s) that zeroes the factorability residual. Requires
// the pump group slowness to lie strictly between signal and idler
// (tau_s tau_i < 0); throws std::domain_error otherwise.
double optimal_pump_width(const FiberSpec& fiber, const ChannelPair& channel,
                          double alpha = default_alpha);

// Pure-beta2 fiber whose factorability optimum lands at t_fwhm_target for the
// given (symmetric) channel pair: beta2 = 1 / (alpha L Omega sigma*). Used to
// set up group-velocity-matched scenarios without a measured beta2.
FiberSpec calibrated_symmetric_fiber(double length_m, double gamma_per_w_m,
                                     double temperature_k, const ChannelPair& channel,
                                     double t_fwhm_target_s, double alpha = default_alpha);

// Grid covering n_sigmas marginal standard deviations on each axis.
GridSpec default_grid(const GaussJsaCoeffs& coeffs, int n_points = 512,
                      double n_sigmas = 4.0);

// Physical-route JSA. subtract_center_mismatch removes dk evaluated at the
// channel centers so the phase-matching ridge passes through the grid origin
// (the usual centered-expansion convention); set it false to study absolute
// mismatch including the 2 gamma P term.
JsaGrid build_jsa(const FiberSpec& fiber, const PumpSpec& pump, const ChannelPair& channel,
                  const GridSpec& grid, PhaseMatchMode mode, double alpha = default_alpha,
                  bool subtract_center_mismatch = true);

// Quadratic-model JSA (the route the closed-form purity refers to).
JsaGrid build_gauss_jsa(const GaussJsaCoeffs& coeffs, const ChannelPair& channel,
                        const GridSpec& grid);

// Multiply signal/idler filter amplitudes into the JSA and renormalize.
// heralding_efficiency on the result records the kept intensity fraction
// (relative to the input grid, compounded with any earlier filtering).
JsaGrid apply_filters(const JsaGrid& grid, const FilterSpec& signal_filter,
                      const FilterSpec& idler_filter);

}  // namespace sfwm
