#include "sfwm/counts.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sfwm/rng.hpp"

namespace sfwm {

DetectorSpec::DetectorSpec(double efficiency, double dark_rate_hz, double dead_time_s,
                           double gate_window_s, Mode mode)
    : efficiency(efficiency), dark_rate_hz(dark_rate_hz), dead_time_s(dead_time_s),
      gate_window_s(gate_window_s), mode(mode) {
  if (!(efficiency > 0.0) || efficiency > 1.0)
    throw std::invalid_argument("DetectorSpec: efficiency must lie in (0, 1]");
  if (dark_rate_hz < 0.0) throw std::invalid_argument("DetectorSpec: dark_rate_hz must be >= 0");
  if (dead_time_s < 0.0) throw std::invalid_argument("DetectorSpec: dead_time_s must be >= 0");
  if (!(gate_window_s > 0.0))
    throw std::invalid_argument("DetectorSpec: gate_window_s must be > 0");
  if (dark_rate_hz * gate_window_s > 0.5)
    throw std::invalid_argument(
        "DetectorSpec: dark_rate_hz * gate_window_s > 0.5; the linearized per-gate dark "
        "probability is meaningless at that rate");
}

RamanSpec::RamanSpec(double coeff_per_w, double phonon_shift, Side side)
    : coeff_per_w(coeff_per_w), phonon_shift(phonon_shift), side(side) {
  if (coeff_per_w < 0.0) throw std::invalid_argument("RamanSpec: coeff_per_w must be >= 0");
  if (!(phonon_shift > 0.0)) throw std::invalid_argument("RamanSpec: phonon_shift must be > 0");
}

Scenario::Scenario(FiberSpec fiber_in, PumpSpec pump_in, ChannelPair channel_in,
                   double capture_in, DetectorSpec det_signal_in, DetectorSpec det_idler_in,
                   RamanSpec raman_signal_in, RamanSpec raman_idler_in,
                   double bg_fourfold_per_pulse_in)
    : fiber(std::move(fiber_in)), pump(std::move(pump_in)), channel(std::move(channel_in)),
      capture(capture_in), det_signal(std::move(det_signal_in)),
      det_idler(std::move(det_idler_in)), raman_signal(std::move(raman_signal_in)),
      raman_idler(std::move(raman_idler_in)),
      bg_fourfold_per_pulse(bg_fourfold_per_pulse_in) {
  if (!(capture > 0.0) || capture > 1.0)
    throw std::invalid_argument("Scenario: capture must lie in (0, 1]");
  if (bg_fourfold_per_pulse < 0.0 || bg_fourfold_per_pulse > 1.0)
    throw std::invalid_argument("Scenario: bg_fourfold_per_pulse must lie in [0, 1]");
  const double center_gap = std::abs(pump.omega0 - channel.pump_center());
  if (center_gap > 1e-9 * pump.omega0)
    throw std::invalid_argument(
        "Scenario: pump carrier does not sit at the channel midpoint; pairs would not "
        "land on the stated channels");
}

double thermal_occupation(double phonon_shift, double temperature_k) {
  if (!(phonon_shift > 0.0))
    throw std::domain_error("thermal_occupation: phonon_shift must be > 0");
  if (!(temperature_k > 0.0))
    throw std::domain_error("thermal_occupation: temperature_k must be > 0");
  const double x = constants::hbar * phonon_shift / (constants::k_boltzmann * temperature_k);
  return 1.0 / std::expm1(x);
}

double raman_occupation(const RamanSpec& raman, double temperature_k) {
  const double n_th = thermal_occupation(raman.phonon_shift, temperature_k);
  return raman.side == RamanSpec::Side::stokes ? n_th + 1.0 : n_th;
}

double pairs_per_pulse(const FiberSpec& fiber, const PumpSpec& pump, double capture) {
  if (!(capture > 0.0) || capture > 1.0)
    throw std::invalid_argument("pairs_per_pulse: capture must lie in (0, 1]");
  const double gain = fiber.gamma_per_w_m * pump.peak_power_w() * fiber.length_m;
  if (gain >= 0.3) {
    std::ostringstream msg;
    msg << "pairs_per_pulse: gamma * P_peak * L = " << gain
        << " is outside the low-gain regime (< 0.3) where the quadratic pair-rate "
           "model holds; reduce the pump power";
    throw std::domain_error(msg.str());
  }
  return capture * gain * gain;
}

double raman_per_pulse(const RamanSpec& raman, double p_avg_w, double temperature_k) {
  if (p_avg_w < 0.0) throw std::invalid_argument("raman_per_pulse: p_avg_w must be >= 0");
  return raman.coeff_per_w * p_avg_w * raman_occupation(raman, temperature_k);
}

namespace {

PumpSpec pump_at_power(const PumpSpec& pump, double p_avg_w) {
  return PumpSpec(pump.omega0, pump.t_fwhm_s, p_avg_w, pump.rep_rate_hz);
}

// Golden-section maximization on [lo, hi] for a unimodal f.
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo,
                                     double hi) {
  constexpr double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

CarPoint car_model(const Scenario& scenario, double p_avg_w) {
  const PumpSpec pump = pump_at_power(scenario.pump, p_avg_w);
  const double mu = pairs_per_pulse(scenario.fiber, pump, scenario.capture);
  const double t_k = scenario.fiber.temperature_k;
  const double nr_s = raman_per_pulse(scenario.raman_signal, p_avg_w, t_k);
  const double nr_i = raman_per_pulse(scenario.raman_idler, p_avg_w, t_k);
  const double eta_s = scenario.det_signal.efficiency;
  const double eta_i = scenario.det_idler.efficiency;

  const double singles_s = eta_s * (mu + nr_s) + scenario.det_signal.dark_per_gate();
  const double singles_i = eta_i * (mu + nr_i) + scenario.det_idler.dark_per_gate();
  const double true_pp = eta_s * eta_i * mu;
  const double acc_pp = singles_s * singles_i;
  if (!(acc_pp > 0.0)) {
    std::ostringstream msg;
    msg << "car_model: accidental rate vanishes at P_avg = " << p_avg_w
        << " W (no pairs, Raman, or dark counts), so CAR is undefined";
    throw std::domain_error(msg.str());
  }
  return {p_avg_w, (true_pp + acc_pp) / acc_pp, mu, true_pp, acc_pp, singles_s, singles_i};
}

CarPeak car_peak(const Scenario& scenario, double p_min_w, double p_max_w) {
  if (!(p_min_w > 0.0) || !(p_max_w > p_min_w))
    throw std::invalid_argument("car_peak: need 0 < p_min_w < p_max_w");

  constexpr int n_samples = 65;
  std::array<double, n_samples> ps, cs;
  for (int k = 0; k < n_samples; ++k) {
    ps[k] = p_min_w + (p_max_w - p_min_w) * k / (n_samples - 1);
    cs[k] = car_model(scenario, ps[k]).car;
  }

  // Unimodality: differences may only switch sign once, from + to -.
  const double tol = 1e-12 * *std::max_element(cs.begin(), cs.end());
  bool falling = false;
  int best = 0;
  for (int k = 0; k + 1 < n_samples; ++k) {
    const double d = cs[k + 1] - cs[k];
    if (std::abs(d) <= tol) continue;
    if (d < 0.0) {
      falling = true;
    } else if (falling) {
      std::ostringstream msg;
      msg << "car_peak: CAR(P_avg) is not unimodal on [" << p_min_w << ", " << p_max_w
          << "] W; it rises again near P_avg = " << ps[k]
          << " W. Refusing to report a peak from a multi-modal curve";
      throw std::runtime_error(msg.str());
    }
    if (cs[k + 1] > cs[best]) best = k + 1;
  }

  const double lo = ps[std::max(0, best - 1)];
  const double hi = ps[std::min(n_samples - 1, best + 1)];
  auto [p_opt, car_max] =
      golden_max([&](double p) { return car_model(scenario, p).car; }, lo, hi);
  return {p_opt, car_max};
}

Scenario with_noise(const Scenario& base, double raman_rate_per_w, double dark_rate_hz) {
  if (raman_rate_per_w < 0.0 || dark_rate_hz < 0.0)
    throw std::invalid_argument("with_noise: rates must be >= 0");
  const double t_k = base.fiber.temperature_k;
  const double occ_s = raman_occupation(base.raman_signal, t_k);
  const double occ_i = raman_occupation(base.raman_idler, t_k);
  if (!(occ_s > 0.0) || !(occ_i > 0.0))
    throw std::domain_error(
        "with_noise: phonon occupation vanishes at this temperature; an arriving Raman "
        "rate cannot be attributed to a coefficient");

  Scenario out = base;
  out.raman_signal = RamanSpec(raman_rate_per_w / occ_s, base.raman_signal.phonon_shift,
                               base.raman_signal.side);
  out.raman_idler = RamanSpec(raman_rate_per_w / occ_i, base.raman_idler.phonon_shift,
                              base.raman_idler.side);
  out.det_signal = DetectorSpec(base.det_signal.efficiency, dark_rate_hz,
                                base.det_signal.dead_time_s, base.det_signal.gate_window_s,
                                base.det_signal.mode);
  out.det_idler = DetectorSpec(base.det_idler.efficiency, dark_rate_hz,
                               base.det_idler.dead_time_s, base.det_idler.gate_window_s,
                               base.det_idler.mode);
  return out;
}

NoiseFit fit_noise(const Scenario& base,
                   const std::vector<std::pair<double, double>>& observations) {
  if (observations.size() < 2)
    throw std::invalid_argument("fit_noise: need at least two (power, CAR) observations");
  for (const auto& [p, car] : observations) {
    if (!(p > 0.0)) throw std::invalid_argument("fit_noise: powers must be > 0");
    if (!(car > 1.0))
      throw std::invalid_argument(
          "fit_noise: observed CAR must exceed 1 (CAR <= 1 carries no pair signal)");
  }

  const std::size_t n = observations.size();
  const double widest_gate =
      std::max(base.det_signal.gate_window_s, base.det_idler.gate_window_s);
  const auto residuals = [&](double log_b, double log_d, std::vector<double>& r) {
    const double rate = std::exp(log_b);
    const double dark = std::exp(log_d);
    // A trial dark rate past the linearized per-gate limit is infeasible, not
    // an error: hand the search a steep wall instead of letting the detector
    // model throw mid-iteration.
    if (!(dark * widest_gate < 0.45) || !std::isfinite(rate)) {
      std::fill(r.begin(), r.end(), 1e6);
      return;
    }
    const Scenario trial = with_noise(base, rate, dark);
    for (std::size_t k = 0; k < n; ++k)
      r[k] = std::log(car_model(trial, observations[k].first).car) -
             std::log(observations[k].second);
  };
  const auto cost_of = [](const std::vector<double>& r) {
    double c = 0.0;
    for (double v : r) c += v * v;
    return c;
  };

  // Seed from the model itself: kappa = mu / P^2, then solve the no-dark and
  // no-Raman limits at the extreme observations for starting rates.
  const double kappa =
      pairs_per_pulse(base.fiber, pump_at_power(base.pump, 1e-6), base.capture) / 1e-12;
  const double eta_bar =
      std::sqrt(base.det_signal.efficiency * base.det_idler.efficiency);
  auto [p_lo, car_lo] = *std::min_element(observations.begin(), observations.end());
  auto [p_hi, car_hi] = *std::max_element(observations.begin(), observations.end());
  double b_seed = std::sqrt(kappa / (car_hi - 1.0)) - kappa * p_hi;
  if (!(b_seed > 0.0)) b_seed = 0.01 * std::sqrt(kappa);
  double d_seed = eta_bar * p_lo * std::sqrt(kappa / (car_lo - 1.0)) -
                  eta_bar * (kappa * p_lo * p_lo + b_seed * p_lo);
  const double gate = base.det_signal.gate_window_s;
  double d_rate_seed = d_seed > 0.0 ? d_seed / gate : 0.01 * eta_bar * b_seed * p_lo / gate;
  if (!(d_rate_seed > 0.0)) d_rate_seed = 1.0;

  std::vector<double> r(n), r_try(n);
  double best_cost = std::numeric_limits<double>::infinity();
  double best_b = b_seed, best_d = d_rate_seed;
  int total_iters = 0;

  for (double fb : {1.0, 0.2, 5.0}) {
    for (double fd : {1.0, 0.2, 5.0}) {
      double x = std::log(b_seed * fb);
      double y = std::log(d_rate_seed * fd);
      residuals(x, y, r);
      double cost = cost_of(r);
      double lambda = 1e-3;

      for (int it = 0; it < 200; ++it) {
        ++total_iters;
        // Numeric Jacobian, forward differences in the log parameters.
        const double h = 1e-7;
        std::vector<double> rx(n), ry(n);
        residuals(x + h, y, rx);
        residuals(x, y + h, ry);
        double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
        for (std::size_t k = 0; k < n; ++k) {
          const double jx = (rx[k] - r[k]) / h;
          const double jy = (ry[k] - r[k]) / h;
          jtj00 += jx * jx;
          jtj01 += jx * jy;
          jtj11 += jy * jy;
          jtr0 += jx * r[k];
          jtr1 += jy * r[k];
        }

        bool accepted = false;
        for (int damp = 0; damp < 20; ++damp) {
          const double a00 = jtj00 * (1.0 + lambda);
          const double a11 = jtj11 * (1.0 + lambda);
          const double det = a00 * a11 - jtj01 * jtj01;
          if (std::abs(det) < 1e-300) break;
          const double dx = (-jtr0 * a11 + jtr1 * jtj01) / det;
          const double dy = (-jtr1 * a00 + jtr0 * jtj01) / det;
          residuals(x + dx, y + dy, r_try);
          const double cost_try = cost_of(r_try);
          if (std::isfinite(cost_try) && cost_try < cost) {
            x += dx;
            y += dy;
            r = r_try;
            const double gain = cost - cost_try;
            cost = cost_try;
            lambda = std::max(lambda / 3.0, 1e-12);
            accepted = true;
            if (std::max(std::abs(dx), std::abs(dy)) < 1e-12 || gain < 1e-18) it = 200;
            break;
          }
          lambda *= 5.0;
        }
        if (!accepted) break;
      }

      if (cost < best_cost) {
        best_cost = cost;
        best_b = std::exp(x);
        best_d = std::exp(y);
      }
    }
  }

  if (!std::isfinite(best_cost))
    throw std::runtime_error("fit_noise: no parameter set reproduced the observations");
  return {best_b, best_d, std::sqrt(best_cost / static_cast<double>(n)), total_iters};
}

namespace {

// Pulses a detector stays blind for after a click.
std::uint64_t blind_pulses(const DetectorSpec& det, double rep_rate_hz) {
  return static_cast<std::uint64_t>(det.dead_time_s * rep_rate_hz);
}

// One detector's response to n_photons arriving in this pulse: thin each
// photon by the efficiency, then offer a dark count. Short-circuits on the
// first detection; the per-pulse stream keeps that deterministic.
bool detector_click(PulseRng& rng, int n_photons, double efficiency, double dark_per_gate) {
  for (int t = 0; t < n_photons; ++t)
    if (rng.bernoulli(efficiency)) return true;
  return rng.bernoulli(dark_per_gate);
}

}  // namespace

McCarResult mc_run_car(const Scenario& scenario, double p_avg_w, std::uint64_t n_pulses,
                       std::uint64_t seed) {
  if (n_pulses == 0) throw std::invalid_argument("mc_run_car: n_pulses must be > 0");
  const PumpSpec pump = pump_at_power(scenario.pump, p_avg_w);
  const double mu = pairs_per_pulse(scenario.fiber, pump, scenario.capture);
  const double t_k = scenario.fiber.temperature_k;
  const double nr_s = raman_per_pulse(scenario.raman_signal, p_avg_w, t_k);
  const double nr_i = raman_per_pulse(scenario.raman_idler, p_avg_w, t_k);
  const double eta_s = scenario.det_signal.efficiency;
  const double eta_i = scenario.det_idler.efficiency;
  const double dark_s = scenario.det_signal.dark_per_gate();
  const double dark_i = scenario.det_idler.dark_per_gate();
  const std::uint64_t blind_s = blind_pulses(scenario.det_signal, pump.rep_rate_hz);
  const std::uint64_t blind_i = blind_pulses(scenario.det_idler, pump.rep_rate_hz);

  std::uint64_t singles_s = 0, singles_i = 0, coinc = 0;
  std::uint64_t alive_s = 0, alive_i = 0;
  for (std::uint64_t k = 0; k < n_pulses; ++k) {
    PulseRng rng(seed, k);
    const int pairs = rng.poisson(mu);
    const int ram_s = rng.poisson(nr_s);
    const int ram_i = rng.poisson(nr_i);

    bool click_s = false;
    if (k >= alive_s) {
      click_s = detector_click(rng, pairs + ram_s, eta_s, dark_s);
      if (click_s) {
        ++singles_s;
        alive_s = k + 1 + blind_s;
      }
    }
    bool click_i = false;
    if (k >= alive_i) {
      click_i = detector_click(rng, pairs + ram_i, eta_i, dark_i);
      if (click_i) {
        ++singles_i;
        alive_i = k + 1 + blind_i;
      }
    }
    if (click_s && click_i) ++coinc;
  }

  if (coinc == 0 || singles_s == 0 || singles_i == 0) {
    std::ostringstream msg;
    msg << "mc_run_car: too few counts to form a CAR estimate (coincidences = " << coinc
        << ", singles_s = " << singles_s << ", singles_i = " << singles_i
        << " in " << n_pulses << " pulses); increase n_pulses or the rates";
    throw std::runtime_error(msg.str());
  }

  const double np = static_cast<double>(n_pulses);
  const double acc_pp = (static_cast<double>(singles_s) / np) *
                        (static_cast<double>(singles_i) / np);
  const double car = static_cast<double>(coinc) / (acc_pp * np);
  const double rel = std::sqrt(1.0 / static_cast<double>(coinc) +
                               1.0 / static_cast<double>(singles_s) +
                               1.0 / static_cast<double>(singles_i));
  return {n_pulses, singles_s, singles_i, coinc, acc_pp, car, car * rel};
}

std::vector<McHomPoint> mc_run_hom(const Scenario& scenario,
                                   const std::vector<double>& delays_s,
                                   const std::vector<double>& overlaps,
                                   std::uint64_t n_pulses, std::uint64_t seed) {
  if (delays_s.size() != overlaps.size())
    throw std::invalid_argument("mc_run_hom: delays and overlaps must pair up");
  if (delays_s.empty()) throw std::invalid_argument("mc_run_hom: no delays given");
  if (n_pulses == 0) throw std::invalid_argument("mc_run_hom: n_pulses must be > 0");
  for (double j : overlaps)
    if (!(std::abs(j) <= 1.0 + 1e-9))
      throw std::invalid_argument("mc_run_hom: overlaps must lie in [-1, 1]");

  const double p_avg_w = scenario.pump.p_avg_w;
  const double mu = pairs_per_pulse(scenario.fiber, scenario.pump, scenario.capture);
  const double t_k = scenario.fiber.temperature_k;
  const double nr_s = raman_per_pulse(scenario.raman_signal, p_avg_w, t_k);
  const double nr_i = raman_per_pulse(scenario.raman_idler, p_avg_w, t_k);
  const double eta_s = scenario.det_signal.efficiency;
  const double eta_i = scenario.det_idler.efficiency;
  const double dark_s = scenario.det_signal.dark_per_gate();
  const double dark_i = scenario.det_idler.dark_per_gate();
  const double bg = scenario.bg_fourfold_per_pulse;
  const std::uint64_t blind_s = blind_pulses(scenario.det_signal, scenario.pump.rep_rate_hz);
  const std::uint64_t blind_i = blind_pulses(scenario.det_idler, scenario.pump.rep_rate_hz);

  // Use a salted seed so a shared base seed cannot lock this run to an
  // mc_run_car run's streams.
  const std::uint64_t run_seed = seed ^ 0x484F4D2D444950ull;

  std::vector<McHomPoint> out;
  out.reserve(delays_s.size());
  for (std::size_t d_idx = 0; d_idx < delays_s.size(); ++d_idx) {
    const double pr_split = 0.5 * (1.0 - std::clamp(overlaps[d_idx], -1.0, 1.0));
    std::uint64_t four = 0;
    std::uint64_t alive_h1 = 0, alive_h2 = 0, alive_a = 0, alive_b = 0;

    for (std::uint64_t k = 0; k < n_pulses; ++k) {
      PulseRng rng(run_seed, static_cast<std::uint64_t>(d_idx) * n_pulses + k);
      if (bg > 0.0 && rng.bernoulli(bg)) {
        ++four;
        continue;
      }

      const int n1 = rng.poisson(mu);
      const int n2 = rng.poisson(mu);
      const int ram_i1 = rng.poisson(nr_i);
      const int ram_i2 = rng.poisson(nr_i);

      bool h1 = false;
      if (k >= alive_h1) {
        h1 = detector_click(rng, n1 + ram_i1, eta_i, dark_i);
        if (h1) alive_h1 = k + 1 + blind_i;
      }
      bool h2 = false;
      if (k >= alive_h2) {
        h2 = detector_click(rng, n2 + ram_i2, eta_i, dark_i);
        if (h2) alive_h2 = k + 1 + blind_i;
      }
      if (!h1 || !h2) continue;

      // Signal photons at the splitter. The leading pair photon from each
      // source interferes; surplus pair photons and Raman photons are
      // distinguishable and route 50/50.
      int phot_a = 0, phot_b = 0;
      const int extras =
          std::max(n1 - 1, 0) + std::max(n2 - 1, 0) + rng.poisson(nr_s) + rng.poisson(nr_s);
      for (int t = 0; t < extras; ++t) (rng.bernoulli(0.5) ? phot_a : phot_b)++;
      if (n1 >= 1 && n2 >= 1) {
        if (rng.bernoulli(pr_split)) {
          ++phot_a;
          ++phot_b;
        } else if (rng.bernoulli(0.5)) {
          phot_a += 2;
        } else {
          phot_b += 2;
        }
      } else if (n1 >= 1 || n2 >= 1) {
        (rng.bernoulli(0.5) ? phot_a : phot_b)++;
      }

      bool click_a = false;
      if (k >= alive_a) {
        click_a = detector_click(rng, phot_a, eta_s, dark_s);
        if (click_a) alive_a = k + 1 + blind_s;
      }
      bool click_b = false;
      if (k >= alive_b) {
        click_b = detector_click(rng, phot_b, eta_s, dark_s);
        if (click_b) alive_b = k + 1 + blind_s;
      }
      if (click_a && click_b) ++four;
    }
    out.push_back({delays_s[d_idx], overlaps[d_idx], four, n_pulses});
  }
  return out;
}

double hom_signal_fourfold_per_pulse(const Scenario& scenario, double p_avg_w,
                                     double overlap) {
  if (!(std::abs(overlap) <= 1.0 + 1e-9))
    throw std::invalid_argument("hom_signal_fourfold_per_pulse: overlap must lie in [-1, 1]");
  const PumpSpec pump = pump_at_power(scenario.pump, p_avg_w);
  const double mu = pairs_per_pulse(scenario.fiber, pump, scenario.capture);
  const double eta_s = scenario.det_signal.efficiency;
  const double eta_i = scenario.det_idler.efficiency;
  // Leading order in mu: both sources emit, both heralds fire, the pair
  // splits, both splitter outputs detect.
  return mu * mu * eta_i * eta_i * eta_s * eta_s * 0.5 * (1.0 - overlap);
}

double hom_background_for_fraction(const Scenario& scenario, double p_avg_w,
                                   double signal_fraction) {
  if (!(signal_fraction > 0.0) || signal_fraction > 1.0)
    throw std::invalid_argument(
        "hom_background_for_fraction: signal_fraction must lie in (0, 1]");
  const double baseline = hom_signal_fourfold_per_pulse(scenario, p_avg_w, 0.0);
  return baseline * (1.0 - signal_fraction) / signal_fraction;
}

}  // namespace sfwm
