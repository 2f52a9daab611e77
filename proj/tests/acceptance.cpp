// End-to-end acceptance checks for the pair-source model. Each numbered
// check prints one PASS/FAIL line; the process exits nonzero if any fail.
// These are the release gates: closed forms against independent numerics,
// published operating-point values, and event-level Monte Carlo cross-checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include "sfwm/counts.hpp"
#include "sfwm/hom.hpp"
#include "sfwm/jsa.hpp"
#include "sfwm/schmidt.hpp"

using namespace sfwm;

namespace {

const double kOmegaP = constants::two_pi * 193.1e12;
const double kOffset = constants::two_pi * 300e9;

ChannelPair channels() { return ChannelPair(kOmegaP + kOffset, kOmegaP - kOffset, kOmegaP); }

FiberSpec reference_fiber() {
  return calibrated_symmetric_fiber(300.0, 2e-3, 77.0, channels(), 8e-12);
}

int g_failures = 0;

void report(int index, bool ok, const std::string& what) {
  std::printf("%s: %d. %s\n", ok ? "PASS" : "FAIL", index, what.c_str());
  if (!ok) ++g_failures;
}

void run(int index, const std::string& what, bool (*fn)()) {
  bool ok = false;
  std::string note = what;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    note += std::string(" [exception: ") + e.what() + "]";
  }
  report(index, ok, note);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1. closed-form vs SVD purity on randomized quadratic states ----------
bool check_random_purity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20260825);
  std::uniform_real_distribution<double> log_ab(std::log(2e-23), std::log(4e-22));
  std::uniform_real_distribution<double> ratio(-0.9, 0.9);

  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const double a = std::exp(log_ab(gen));
    const double b = std::exp(log_ab(gen));
    const double c = ratio(gen) * std::sqrt(a * b);
    const GaussJsaCoeffs coeffs(a, b, c);
    const auto jsa = build_gauss_jsa(coeffs, channels(), default_grid(coeffs, 512, 6.0));
    const double gap = std::abs(schmidt_decompose(jsa).purity - purity_gauss_analytic(coeffs));
    if (gap > worst) worst = gap;
  }
  const double dt = elapsed_s(t0);
  std::printf("      50 randomized states on 512^2 grids: max |svd - closed form| = %.3g, "
              "%.1f s\n", worst, dt);
  return worst < 1e-4 && dt < 60.0;
}

// ---- 2. operating-point purity and the scan optimum ------------------------
bool check_reference_purity() {
  const auto fiber = reference_fiber();
  const auto coeffs =
      gauss_coeffs(fiber, PumpSpec(kOmegaP, 25e-12, 0.0, 27.9e6), channels());
  const double closed = purity_gauss_analytic(coeffs);
  const double r = (8.0 / 25.0) * (8.0 / 25.0);
  const double symmetric_form = 2.0 * std::sqrt(r) / (1.0 + r);
  const double reported = 0.5693;  // measured value this model should bracket
  std::printf("      closed form %.5f, symmetric-walkoff form %.5f, reference %.4f "
              "(relative gap %.2f%%)\n",
              closed, symmetric_form, reported, 100.0 * std::abs(closed / reported - 1.0));
  if (std::abs(closed - symmetric_form) > 1e-9) return false;
  if (std::abs(closed / reported - 1.0) > 0.03) return false;

  const auto rows = purity_scan(fiber, channels(), 2e-12, 20e-12, 37);
  std::size_t argmax = 0;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k].purity_svd > rows[argmax].purity_svd) argmax = k;
  const double step = rows[1].t_fwhm_s - rows[0].t_fwhm_s;
  std::printf("      scan argmax at %.2f ps (step %.2f ps)\n",
              rows[argmax].t_fwhm_s * 1e12, step * 1e12);
  return std::abs(rows[argmax].t_fwhm_s - 8e-12) <= step + 1e-15;
}

// ---- 3. zero factorability residual means a separable state ----------------
bool check_factorable_point() {
  const auto fiber = reference_fiber();
  const double t_star = optimal_pump_width(fiber, channels());
  const double residual =
      factorability_residual(fiber, channels(), sigma_from_fwhm(t_star));
  const PumpSpec pump(kOmegaP, t_star, 0.0, 27.9e6);
  const auto coeffs = gauss_coeffs(fiber, pump, channels());
  const auto jsa = build_jsa(fiber, pump, channels(), default_grid(coeffs, 512, 5.0),
                             PhaseMatchMode::gauss);
  const double purity = schmidt_decompose(jsa).purity;
  std::printf("      residual %.3g at T* = %.3f ps, physical-route purity %.6f\n",
              residual, t_star * 1e12, purity);
  return std::abs(residual) < 1e-9 && purity >= 0.999;
}

// ---- 4. state-overlap identity on randomized density matrices --------------
bool check_overlap_identity() {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 48;
  Eigen::VectorXd axis(n);
  for (int j = 0; j < n; ++j) axis(j) = (j - n / 2) * 2e9;

  const auto random_state = [&](int rank) {
    Eigen::MatrixXd g(n, rank);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < rank; ++k) g(j, k) = normal(gen);
    Eigen::MatrixXd rho = g * g.transpose();
    rho /= rho.trace();
    return DensityMatrix(rho, axis, kOmegaP + kOffset);
  };

  double worst_identity = 0.0, worst_self = 0.0, worst_swap = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto rho1 = random_state(1 + rep % 6);
    const auto rho2 = random_state(1 + (rep * 5) % 7);
    const auto vis = visibility(rho1, rho2);
    worst_identity = std::max(worst_identity, std::abs(vis.value - vis.identity_rhs()));
    worst_self = std::max(worst_self,
                          std::abs(visibility(rho1, rho1).value - rho1.purity()));
    worst_swap = std::max(worst_swap,
                          std::abs(vis.value - visibility(rho2, rho1).value));
  }
  std::printf("      identity gap %.3g, self-overlap vs purity gap %.3g, swap gap %.3g\n",
              worst_identity, worst_self, worst_swap);
  return worst_identity < 1e-10 && worst_self < 1e-6 && worst_swap < 1e-12;
}

// ---- 5. dip curve anatomy ---------------------------------------------------
bool check_dip_curve() {
  const auto fiber = reference_fiber();
  const PumpSpec pump(kOmegaP, 25e-12, 0.0, 27.9e6);
  const auto coeffs = gauss_coeffs(fiber, pump, channels());
  const auto jsa = build_gauss_jsa(coeffs, channels(), default_grid(coeffs, 128, 6.0));
  const auto rho = reduced_density(jsa, Party::signal);

  // +-60 ps: the mixed state's overlap decays on a ~20 ps scale, so the
  // curve needs this much room to come back within 1% of the 1/2 baseline.
  std::vector<double> delays;
  for (int k = -20; k <= 20; ++k) delays.push_back(k * 3e-12);
  const auto curve = dip_curve(rho, rho, delays);

  const double direct = visibility(rho, rho).value;
  const double from_dip = 1.0 - 2.0 * curve.coincidence_prob[20];
  double evenness = 0.0;
  for (int k = 0; k <= 20; ++k)
    evenness = std::max(evenness, std::abs(curve.coincidence_prob[20 - k] -
                                           curve.coincidence_prob[20 + k]));
  std::printf("      1 - 2 P(0) = %.9f vs Tr(rho1 rho2) = %.9f, baseline %.5f, "
              "evenness gap %.2g\n", from_dip, direct, curve.baseline, evenness);
  return std::abs(from_dip - direct) < 1e-6 && std::abs(curve.baseline - 0.5) < 0.005 &&
         evenness < 1e-8;
}

// ---- 6. background bookkeeping and the four-fold Monte Carlo ---------------
bool check_raw_visibility() {
  const double v_raw = raw_visibility(0.829, 0.6417, 1.0 - 0.6417);
  std::printf("      0.829 net x 0.6417 signal fraction = %.5f (target 0.532)\n", v_raw);
  if (std::abs(v_raw - 0.532) > 5e-4) return false;

  // Bright, low-noise scenario so 1e7 pulses resolve the four-fold dip.
  // mu ~ 0.01: bright enough for statistics, dim enough that multi-pair
  // emission (which the event model includes and the low-gain closed form
  // does not) stays well under the statistical error.
  const double p_bright = 1.2374e-4;
  const DetectorSpec det(0.9, 100.0, 0.0, 1e-9, DetectorSpec::Mode::gated);
  const RamanSpec r_s(0.0, kOffset, RamanSpec::Side::anti_stokes);
  const RamanSpec r_i(0.0, kOffset, RamanSpec::Side::stokes);
  Scenario sc(reference_fiber(), PumpSpec(kOmegaP, 25e-12, p_bright, 27.9e6), channels(),
              1.0, det, det, r_s, r_i);
  sc.bg_fourfold_per_pulse = hom_background_for_fraction(sc, p_bright, 0.6417);
  std::printf("      pairs per pulse %.5f\n",
              pairs_per_pulse(sc.fiber, sc.pump, sc.capture));

  const std::vector<double> delays = {0.0, 60e-12};
  const std::vector<double> overlaps = {0.829, 0.0};
  const auto points = mc_run_hom(sc, delays, overlaps, 10'000'000, 424242);
  const double c_dip = static_cast<double>(points[0].fourfolds);
  const double c_far = static_cast<double>(points[1].fourfolds);
  if (c_far <= 0.0 || c_dip <= 0.0) return false;
  const double v_mc = 1.0 - c_dip / c_far;
  const double sigma = (c_dip / c_far) * std::sqrt(1.0 / c_dip + 1.0 / c_far);
  std::printf("      mc raw visibility %.4f +- %.4f vs %.4f (%.1f sigma, %llu/%llu "
              "four-folds)\n", v_mc, sigma, v_raw, std::abs(v_mc - v_raw) / sigma,
              static_cast<unsigned long long>(points[0].fourfolds),
              static_cast<unsigned long long>(points[1].fourfolds));
  return std::abs(v_mc - v_raw) < 2.0 * sigma;
}

// ---- 7. CAR: ceiling, calibrated peak, event-level agreement ---------------
bool check_car() {
  const DetectorSpec det(0.2, 0.0, 3e-6, 0.8e-9, DetectorSpec::Mode::gated);
  const DetectorSpec det_i(0.2, 0.0, 3e-6, 0.8e-9, DetectorSpec::Mode::free_running);
  const RamanSpec r_s(0.0, kOffset, RamanSpec::Side::anti_stokes);
  const RamanSpec r_i(0.0, kOffset, RamanSpec::Side::stokes);
  const Scenario bare(reference_fiber(), PumpSpec(kOmegaP, 25e-12, 23e-6, 27.9e6),
                      channels(), 0.1, det, det_i, r_s, r_i);

  // Noise-free ceiling.
  const Scenario clean = with_noise(bare, 0.0, 0.0);
  for (double p : {2e-6, 23e-6, 120e-6}) {
    const double mu =
        pairs_per_pulse(bare.fiber, PumpSpec(kOmegaP, 25e-12, p, 27.9e6), 0.1);
    if (std::abs(car_model(clean, p).car - (1.0 + 1.0 / mu)) > 1e-9 * (1.0 + 1.0 / mu))
      return false;
  }

  // Fit the two noise knobs to the published peak plus one synthetic
  // low-power point generated by the calibrated model.
  const auto fit = fit_noise(bare, {{23e-6, 131.0}, {3e-6, 68.43025775076774}});
  const Scenario fitted = with_noise(bare, fit.raman_rate_per_w, fit.dark_rate_hz);
  const auto peak = car_peak(fitted, 1e-6, 200e-6);
  std::printf("      fitted Raman %.4f /W, dark %.1f Hz; peak CAR %.2f at %.2f uW\n",
              fit.raman_rate_per_w, fit.dark_rate_hz, peak.car_max, peak.p_opt_w * 1e6);
  if (std::abs(peak.p_opt_w / 23e-6 - 1.0) > 0.10) return false;
  if (std::abs(peak.car_max / 131.0 - 1.0) > 0.10) return false;

  const auto t0 = std::chrono::steady_clock::now();
  const auto mc = mc_run_car(fitted, 23e-6, 10'000'000, 31337);
  const double model = car_model(fitted, 23e-6).car;
  const double dt = elapsed_s(t0);
  std::printf("      mc CAR %.1f +- %.1f vs model %.1f (%.2f sigma, %.1f s, %llu "
              "coincidences)\n", mc.car, mc.car_stderr, model,
              std::abs(mc.car - model) / mc.car_stderr, dt,
              static_cast<unsigned long long>(mc.coincidences));
  return std::abs(mc.car - model) < 3.0 * mc.car_stderr && dt < 300.0;
}

// ---- 8. Gaussian stand-in matches the sinc width where its constant says ---
bool check_phase_match_width() {
  const double L = 300.0;
  const auto half_point = [&](PhaseMatchMode mode) {
    double lo = 0.0, hi = 2.0 * std::numbers::pi / L;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phase_matching_amp(mid, L, mode) > 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) * L;  // half-width in dk L
  };
  const double w_sinc = 2.0 * half_point(PhaseMatchMode::sinc);
  const double w_gauss = 2.0 * half_point(PhaseMatchMode::gauss);
  const double gap = std::abs(w_gauss / w_sinc - 1.0);
  std::printf("      amplitude FWHM in dk L: sinc %.5f, gauss %.5f (gap %.3f%%)\n",
              w_sinc, w_gauss, 100.0 * gap);
  return gap < 0.02;
}

// ---- 9. narrower filters purify; dip visibility equals filtered purity -----
bool check_filter_sweep() {
  const auto fiber = reference_fiber();
  const PumpSpec pump(kOmegaP, 25e-12, 0.0, 27.9e6);
  const auto coeffs = gauss_coeffs(fiber, pump, channels());
  const auto jsa = build_gauss_jsa(coeffs, channels(), default_grid(coeffs, 512, 6.0));

  double previous = 0.0;
  double purity_100 = 0.0;
  bool monotone = true;
  for (int k = 0; k < 10; ++k) {
    // 200 GHz down to 25 GHz, log-spaced.
    const double fwhm_ghz = 200.0 * std::pow(25.0 / 200.0, k / 9.0);
    const double fwhm = constants::two_pi * fwhm_ghz * 1e9;
    const auto filtered = apply_filters(
        jsa, FilterSpec(channels().omega_s0, fwhm, FilterSpec::Shape::gaussian),
        FilterSpec(channels().omega_i0, fwhm, FilterSpec::Shape::gaussian));
    const double purity = schmidt_decompose(filtered).purity;
    if (k > 0 && purity < previous - 1e-12) monotone = false;
    previous = purity;
    if (k == 0) std::printf("      purity 200 GHz: %.5f", purity);
    if (k == 9) std::printf(" ... 25 GHz: %.5f\n", purity);
  }
  if (!monotone) return false;

  const double fwhm_100 = constants::two_pi * 100e9;
  const auto filtered_100 = apply_filters(
      jsa, FilterSpec(channels().omega_s0, fwhm_100, FilterSpec::Shape::gaussian),
      FilterSpec(channels().omega_i0, fwhm_100, FilterSpec::Shape::gaussian));
  purity_100 = schmidt_decompose(filtered_100).purity;
  const auto rho = reduced_density(filtered_100, Party::signal);
  std::vector<double> delays;
  for (int k = -15; k <= 15; ++k) delays.push_back(k * 2.5e-12);
  const auto curve = dip_curve(rho, rho, delays);
  std::printf("      100 GHz: filtered purity %.6f, dip visibility %.6f\n", purity_100,
              curve.v_net);
  return std::abs(curve.v_net - purity_100) < 1e-3;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  run(1, "closed-form purity matches 512^2 SVD within 1e-4 on 50 random states",
      check_random_purity);
  run(2, "reference geometry: purity 0.58 at 25 ps, within 3% of 0.5693; scan peaks at 8 ps",
      check_reference_purity);
  run(3, "zero factorability residual gives SVD purity >= 0.999 on the physical route",
      check_factorable_point);
  run(4, "overlap identity, self-overlap = purity, and argument symmetry",
      check_overlap_identity);
  run(5, "dip: 1 - 2P(0) = overlap, baseline 1/2 within 1%, even in delay",
      check_dip_curve);
  run(6, "raw visibility 0.532 from 0.829 x 0.6417; four-fold MC within 2 sigma",
      check_raw_visibility);
  run(7, "CAR ceiling 1 + 1/mu; fitted peak 131 at 23 uW within 10%; MC within 3 sigma",
      check_car);
  run(8, "Gaussian phase-matching stand-in matches sinc amplitude FWHM within 2%",
      check_phase_match_width);
  run(9, "filter sweep 200 -> 25 GHz purifies monotonically; dip visibility = purity",
      check_filter_sweep);

  std::printf("%s (%d/9 passed, %.1f s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              9 - g_failures, elapsed_s(t0));
  return g_failures == 0 ? 0 : 1;
}
