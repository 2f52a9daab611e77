#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "sfwm/phys.hpp"

using namespace sfwm;

namespace {

// 193.1 THz carrier used throughout as a realistic expansion point.
const double kOmegaRef = constants::two_pi * 193.1e12;

FiberSpec fiber_with_beta(const std::array<double, 5>& beta) {
  return FiberSpec(300.0, 2e-3, beta, kOmegaRef, 77.0);
}

}  // namespace

TEST_CASE("wavevector reproduces hand-evaluated Taylor terms") {
  // Single beta1 term: k - k0 = beta1 * x.
  const auto f1 = fiber_with_beta({0.0, 1e-8, 0.0, 0.0, 0.0});
  CHECK(wavevector(f1, kOmegaRef + 1e12) == doctest::Approx(1e4).epsilon(1e-13));

  // Single beta2 term: k = beta2 x^2 / 2.
  const auto f2 = fiber_with_beta({0.0, 0.0, -1e-27, 0.0, 0.0});
  CHECK(wavevector(f2, kOmegaRef + 1e12) == doctest::Approx(-0.5e-3).epsilon(1e-13));

  // beta0 passes straight through at the expansion point.
  const auto f0 = fiber_with_beta({7.25, 0.0, 0.0, 0.0, 0.0});
  CHECK(wavevector(f0, kOmegaRef) == doctest::Approx(7.25).epsilon(1e-15));
}

TEST_CASE("wavevector Horner form matches a term-by-term sum") {
  std::mt19937_64 gen(411);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::array<double, 5> beta = {u(gen) * 1e2, 4.9e-9 * (1.0 + u(gen)),
                                        u(gen) * 1e-26, u(gen) * 1e-40, u(gen) * 1e-55};
    const auto fiber = fiber_with_beta(beta);
    const double x = u(gen) * 0.08 * kOmegaRef;
    double direct = 0.0;
    double fact = 1.0;
    double xn = 1.0;
    for (int n = 0; n < 5; ++n) {
      if (n > 0) fact *= n;
      direct += beta[static_cast<std::size_t>(n)] * xn / fact;
      xn *= x;
    }
    // The two evaluation orders round differently; with terms of opposite
    // sign the sum can lose a few digits to cancellation, hence 1e-9.
    CHECK(wavevector(fiber, kOmegaRef + x) == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("group_slowness agrees with a central difference of wavevector") {
  std::mt19937_64 gen(412);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e6;  // rad/s; curvature scales put the FD error ~1e-9 relative
  for (int rep = 0; rep < 100; ++rep) {
    const std::array<double, 5> beta = {0.0, 4.9e-9 * (1.0 + 0.3 * u(gen)), u(gen) * 1e-26,
                                        u(gen) * 1e-40, u(gen) * 1e-55};
    const auto fiber = fiber_with_beta(beta);
    const double omega = kOmegaRef + u(gen) * 0.05 * kOmegaRef;
    const double fd = (wavevector(fiber, omega + h) - wavevector(fiber, omega - h)) / (2.0 * h);
    CHECK(group_slowness(fiber, omega) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("dispersion validity window is enforced and named in the error") {
  const auto fiber = fiber_with_beta({0.0, 4.9e-9, 0.0, 0.0, 0.0});
  CHECK_NOTHROW(wavevector(fiber, kOmegaRef * 1.0999));
  CHECK_THROWS_AS(wavevector(fiber, kOmegaRef * 1.11), std::out_of_range);
  CHECK_THROWS_AS(group_slowness(fiber, kOmegaRef * 0.89), std::out_of_range);
  try {
    wavevector(fiber, kOmegaRef * 1.2);
    FAIL("expected out_of_range");
  } catch (const std::out_of_range& e) {
    const std::string msg = e.what();
    CHECK(msg.find("window") != std::string::npos);
    CHECK(msg.find("omega_ref") != std::string::npos);
  }
}

TEST_CASE("sigma_from_fwhm matches the transform-limited Gaussian constant") {
  // 2 sqrt(2 ln 2) / t_fwhm, frozen at two widths used throughout.
  CHECK(sigma_from_fwhm(25e-12) == doctest::Approx(9.4192801801237981e10).epsilon(1e-12));
  CHECK(sigma_from_fwhm(8e-12) == doctest::Approx(2.9435250562886866e11).epsilon(1e-12));

  // sigma * t_fwhm is width-independent.
  for (double t : {0.5e-12, 2e-12, 25e-12, 300e-12})
    CHECK(sigma_from_fwhm(t) * t == doctest::Approx(2.3548200450309493).epsilon(1e-14));

  CHECK(fwhm_from_sigma(sigma_from_fwhm(17e-12)) == doctest::Approx(17e-12).epsilon(1e-14));
  CHECK_THROWS_AS(sigma_from_fwhm(0.0), std::domain_error);
  CHECK_THROWS_AS(fwhm_from_sigma(-1.0), std::domain_error);
}

TEST_CASE("sigma_from_fwhm agrees with a numeric Fourier transform") {
  // Sample the time-domain field of a pulse with a given intensity FWHM,
  // transform it by direct summation, and check the spectral amplitude falls
  // to 1/e exactly at the claimed sigma_p.
  const double t_fwhm = 25e-12;
  const double tau = t_fwhm / (2.0 * std::sqrt(std::log(2.0)));  // intensity 1/e half-width
  const double sigma_p = sigma_from_fwhm(t_fwhm);

  const int n = 8001;
  const double t_max = 10.0 * tau;
  const double dt = 2.0 * t_max / (n - 1);
  const auto spectrum_at = [&](double omega) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = -t_max + k * dt;
      acc += std::exp(-t * t / (2.0 * tau * tau)) *
             std::exp(std::complex<double>(0.0, omega * t));
    }
    return std::abs(acc) * dt;
  };

  const double ratio = spectrum_at(sigma_p) / spectrum_at(0.0);
  CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("itu_channel_freq_hz anchors at 193.1 THz on a 100 GHz raster") {
  CHECK(itu_channel_freq_hz(0) == doctest::Approx(193.1e12).epsilon(1e-15));
  CHECK(itu_channel_freq_hz(3) == doctest::Approx(193.4e12).epsilon(1e-15));
  CHECK(itu_channel_freq_hz(-3) == doctest::Approx(192.8e12).epsilon(1e-15));
  CHECK(itu_channel_freq_hz(60) == doctest::Approx(199.1e12).epsilon(1e-15));
  CHECK(itu_channel_freq_hz(-60) == doctest::Approx(187.1e12).epsilon(1e-15));
  CHECK_THROWS_AS(itu_channel_freq_hz(61), std::out_of_range);
  CHECK_THROWS_AS(itu_channel_freq_hz(-61), std::out_of_range);
}

TEST_CASE("PumpSpec derived quantities") {
  const PumpSpec pump(kOmegaRef, 25e-12, 23e-6, 27.9e6);
  CHECK(pump.sigma_p() == doctest::Approx(sigma_from_fwhm(25e-12)).epsilon(1e-15));
  CHECK(pump.pulse_energy_j() == doctest::Approx(8.2437275985663077e-13).epsilon(1e-12));
  // P_peak = 2 sqrt(ln2/pi) E / t_fwhm.
  CHECK(pump.peak_power_w() == doctest::Approx(0.030977860086153378).epsilon(1e-12));

  CHECK_THROWS_AS(PumpSpec(kOmegaRef, -1e-12, 1e-6, 1e6), std::invalid_argument);
  CHECK_THROWS_AS(PumpSpec(kOmegaRef, 1e-12, -1e-6, 1e6), std::invalid_argument);
  CHECK_THROWS_AS(PumpSpec(kOmegaRef, 1e-12, 1e-6, 0.0), std::invalid_argument);
  CHECK_NOTHROW(PumpSpec(kOmegaRef, 1e-12, 0.0, 1e6));  // zero power is a valid limit
}

TEST_CASE("ChannelPair enforces energy conservation against the pump") {
  const double ws = kOmegaRef + constants::two_pi * 300e9;
  const double wi = kOmegaRef - constants::two_pi * 300e9;
  const ChannelPair pair(ws, wi, kOmegaRef);
  CHECK(pair.pump_center() == doctest::Approx(kOmegaRef).epsilon(1e-15));
  CHECK(pair.detuning() == doctest::Approx(constants::two_pi * 300e9).epsilon(1e-12));

  // A 100 MHz skew on one channel is far beyond the 1e-9 relative tolerance.
  CHECK_THROWS_AS(ChannelPair(ws + constants::two_pi * 100e6, wi, kOmegaRef),
                  std::invalid_argument);
  // Swapped channels (signal below idler) are rejected.
  CHECK_THROWS_AS(ChannelPair(wi, ws, kOmegaRef), std::invalid_argument);
}

TEST_CASE("GridSpec validation and step sizes") {
  const GridSpec g(512, 3e11, 2e11);
  CHECK(g.step_s() == doctest::Approx(2.0 * 3e11 / 511.0).epsilon(1e-15));
  CHECK(g.step_i() == doctest::Approx(2.0 * 2e11 / 511.0).epsilon(1e-15));
  CHECK_THROWS_AS(GridSpec(511, 1e11, 1e11), std::invalid_argument);  // odd
  CHECK_THROWS_AS(GridSpec(8, 1e11, 1e11), std::invalid_argument);    // too small
  CHECK_THROWS_AS(GridSpec(64, -1e11, 1e11), std::invalid_argument);
}

TEST_CASE("FiberSpec validation") {
  const std::array<double, 5> beta{};
  CHECK_THROWS_AS(FiberSpec(0.0, 2e-3, beta, kOmegaRef, 77.0), std::invalid_argument);
  CHECK_THROWS_AS(FiberSpec(300.0, -2e-3, beta, kOmegaRef, 77.0), std::invalid_argument);
  CHECK_THROWS_AS(FiberSpec(300.0, 2e-3, beta, -1.0, 77.0), std::invalid_argument);
  CHECK_THROWS_AS(FiberSpec(300.0, 2e-3, beta, kOmegaRef, 0.0), std::invalid_argument);
  const std::array<double, 5> bad = {0.0, std::nan(""), 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(FiberSpec(300.0, 2e-3, bad, kOmegaRef, 77.0), std::invalid_argument);
}
