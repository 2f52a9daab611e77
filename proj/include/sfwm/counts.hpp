#pragma once

// Count-rate model (pairs, Raman noise, darks, CAR) and the event-level
// Monte Carlo that cross-checks it. Everything is per pump pulse: a gated
// detection either happens in a pulse slot or it does not, and rates per
// second are recovered by multiplying with the repetition rate.
//
// Model, per pulse and per arm x in {signal, idler}:
//   mu     = capture * (gamma P_peak L)^2        pairs (low gain only)
//   n_R,x  = coeff_x * P_avg * occupation_x      spontaneous Raman photons
//   N_x    = eta_x (mu + n_R,x) + d_x            singles probability
//   C_true = eta_s eta_i mu                      correlated coincidences
//   C_acc  = N_s N_i                             accidental coincidences
//   CAR    = (C_true + C_acc) / C_acc
// With no noise this collapses to CAR = 1 + 1/mu, the small-mu ceiling.

#include <cstdint>
#include <utility>
#include <vector>

#include "sfwm/phys.hpp"

namespace sfwm {

struct DetectorSpec {
  enum class Mode { gated, free_running };

  double efficiency;      // detection probability per arriving photon
  double dark_rate_hz;
  double dead_time_s;
  double gate_window_s;   // effective coincidence/gate window
  Mode mode = Mode::gated;

  DetectorSpec(double efficiency, double dark_rate_hz, double dead_time_s,
               double gate_window_s, Mode mode = Mode::gated);

  // Dark-count probability inside one gate (linearized Poisson rate).
  double dark_per_gate() const { return dark_rate_hz * gate_window_s; }
};

// Spontaneous Raman scattering into one channel. coeff_per_w is the photon
// yield per pulse, per watt of average pump power, per unit phonon
// occupation; the occupation factor (n_th for anti-Stokes, n_th + 1 for
// Stokes) carries the whole temperature dependence, so a coefficient
// calibrated at one temperature transfers to another with no extra knob.
struct RamanSpec {
  enum class Side { stokes, anti_stokes };

  double coeff_per_w;
  double phonon_shift;  // |channel - pump| frequency offset, rad/s
  Side side;

  RamanSpec(double coeff_per_w, double phonon_shift, Side side);
};

// Bose-Einstein phonon occupation n_th = 1 / (exp(hbar W / kT) - 1).
double thermal_occupation(double phonon_shift, double temperature_k);
double raman_occupation(const RamanSpec& raman, double temperature_k);

struct Scenario {
  FiberSpec fiber;
  PumpSpec pump;
  ChannelPair channel;
  double capture;  // pair collection fraction into the filtered channels
  DetectorSpec det_signal;
  DetectorSpec det_idler;
  RamanSpec raman_signal;
  RamanSpec raman_idler;
  // Uninterfering four-fold background per pulse, used only by the HOM
  // Monte Carlo (leaked pump, stray light); see hom_background_for_fraction.
  double bg_fourfold_per_pulse = 0.0;

  Scenario(FiberSpec fiber, PumpSpec pump, ChannelPair channel, double capture,
           DetectorSpec det_signal, DetectorSpec det_idler, RamanSpec raman_signal,
           RamanSpec raman_idler, double bg_fourfold_per_pulse = 0.0);
};

// capture * (gamma P_peak L)^2. Throws std::domain_error once the pump gain
// gamma P_peak L leaves the low-gain regime (>= 0.3) where the quadratic
// scaling stops being trustworthy.
double pairs_per_pulse(const FiberSpec& fiber, const PumpSpec& pump, double capture);

double raman_per_pulse(const RamanSpec& raman, double p_avg_w, double temperature_k);

struct CarPoint {
  double p_avg_w;
  double car;
  double pairs_per_pulse;
  double true_per_pulse;
  double accidental_per_pulse;
  double singles_s_per_pulse;
  double singles_i_per_pulse;
};

// Closed-form CAR at one average power (pump width etc. from the scenario).
CarPoint car_model(const Scenario& scenario, double p_avg_w);

struct CarPeak {
  double p_opt_w;
  double car_max;
};

// Maximum of car_model over [p_min_w, p_max_w]. The curve is sampled first
// and must be unimodal (rise then fall, either side possibly empty); the
// bracketed maximum is then refined by golden-section search.
CarPeak car_peak(const Scenario& scenario, double p_min_w, double p_max_w);

// Symmetric-noise scenario: one shared Raman yield (per pulse per watt,
// occupation already folded in) split onto each side's coefficient, and one
// dark rate applied to both detectors.
Scenario with_noise(const Scenario& base, double raman_rate_per_w, double dark_rate_hz);

struct NoiseFit {
  double raman_rate_per_w;  // shared arriving Raman rate, as in with_noise
  double dark_rate_hz;
  double rms_log_residual;  // rms of log(CAR_model) - log(CAR_observed)
  int iterations;
};

// Least-squares fit of (Raman rate, dark rate) to observed (power, CAR)
// pairs, residuals in log CAR. Needs at least two observations with CAR > 1.
NoiseFit fit_noise(const Scenario& base,
                   const std::vector<std::pair<double, double>>& observations);

struct McCarResult {
  std::uint64_t n_pulses;
  std::uint64_t singles_s;
  std::uint64_t singles_i;
  std::uint64_t coincidences;
  double accidental_per_pulse;  // singles-product estimate (S_s/n)(S_i/n)
  double car;                   // coincidences / (accidental_per_pulse * n)
  double car_stderr;            // car * sqrt(1/C + 1/S_s + 1/S_i)
};

// Event-level cross-check of car_model: per pulse, draw Poisson pair and
// Raman numbers, thin each photon by the detector efficiency, add dark
// counts, apply dead time across pulses, and count singles and coincidences.
// Accidentals use the singles-product estimator, matching the delayed-window
// measurement the model's C_acc = N_s N_i describes.
McCarResult mc_run_car(const Scenario& scenario, double p_avg_w, std::uint64_t n_pulses,
                       std::uint64_t seed);

struct McHomPoint {
  double delay_s;
  double overlap;  // J(tau) fed in for this delay
  std::uint64_t fourfolds;
  std::uint64_t n_pulses;
};

// Event-level four-fold HOM dip. Each delay is an independent acquisition of
// n_pulses. Per pulse and per source: Poisson pairs, heralds by thinning
// (plus Raman and darks), and the two heralded signal photons meet on the
// splitter, landing in opposite outputs with probability (1 - J)/2. Surplus
// pair photons and Raman photons route 50/50 as distinguishable extras, and
// bg_fourfold_per_pulse injects delay-independent background events.
std::vector<McHomPoint> mc_run_hom(const Scenario& scenario,
                                   const std::vector<double>& delays_s,
                                   const std::vector<double>& overlaps,
                                   std::uint64_t n_pulses, std::uint64_t seed);

// Analytic four-fold signal rate per pulse at a given overlap value,
// low-gain approximation; the J-independent herald/detection prefactor times
// (1 - J)/2.
double hom_signal_fourfold_per_pulse(const Scenario& scenario, double p_avg_w,
                                     double overlap);

// Background level that makes signal / (signal + background) equal the given
// fraction at the dip baseline (J = 0).
double hom_background_for_fraction(const Scenario& scenario, double p_avg_w,
                                   double signal_fraction);

}  // namespace sfwm
