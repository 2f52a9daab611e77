#include "sfwm/hom.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sfwm {

namespace {

void check_same_axes(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.axis.size() != rho2.axis.size())
    throw std::invalid_argument("hom: density matrices sampled on different grid sizes");
  const double span = rho1.axis(rho1.axis.size() - 1) - rho1.axis(0);
  const double axis_diff = (rho1.axis - rho2.axis).cwiseAbs().maxCoeff();
  const double center_diff = std::abs(rho1.omega_center - rho2.omega_center);
  if (axis_diff > 1e-9 * span || center_diff > 1e-9 * span) {
    std::ostringstream msg;
    msg << "hom: density matrices live on mismatched frequency axes (max detuning "
           "difference "
        << axis_diff << " rad/s, center difference " << center_diff
        << " rad/s); resample both states onto a common grid first";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

VisibilityResult visibility(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  check_same_axes(rho1, rho2);
  VisibilityResult r;
  // Tr(AB) = sum_jk A_jk B_jk for symmetric B.
  r.value = rho1.rho.cwiseProduct(rho2.rho).sum();
  r.purity1 = rho1.purity();
  r.purity2 = rho2.purity();
  r.hs_distance_sq = (rho1.rho - rho2.rho).squaredNorm();
  return r;
}

double dip_overlap(const DensityMatrix& rho1, const DensityMatrix& rho2, double tau_s) {
  check_same_axes(rho1, rho2);
  const Eigen::Index n = rho1.axis.size();
  const double step = rho1.axis(1) - rho1.axis(0);
  const double tau_max = std::numbers::pi / step;
  if (std::abs(tau_s) > tau_max) {
    std::ostringstream msg;
    msg << "dip_overlap: |tau| = " << std::abs(tau_s)
        << " s exceeds the aliasing-free range " << tau_max
        << " s of this frequency grid (pi / step); refine the grid to reach longer delays";
    throw std::out_of_range(msg.str());
  }

  // Both matrices are symmetric and cos is even in (j <-> k), so fold the sum.
  double j_val = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    j_val += rho1.rho(j, j) * rho2.rho(j, j);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      j_val += 2.0 * rho1.rho(j, k) * rho2.rho(j, k) *
               std::cos((rho1.axis(j) - rho1.axis(k)) * tau_s);
    }
  }
  return j_val;
}

DipCurve dip_curve(const DensityMatrix& rho1, const DensityMatrix& rho2,
                   const std::vector<double>& delays_s) {
  if (delays_s.empty()) throw std::invalid_argument("dip_curve: no delays given");
  DipCurve out;
  out.delays_s = delays_s;
  out.coincidence_prob.reserve(delays_s.size());
  double tau_far = 0.0;
  double p_far = 0.5;
  for (double tau : delays_s) {
    const double p = 0.5 * (1.0 - dip_overlap(rho1, rho2, tau));
    out.coincidence_prob.push_back(p);
    if (std::abs(tau) >= tau_far) {
      tau_far = std::abs(tau);
      p_far = p;
    }
  }
  out.v_net = dip_overlap(rho1, rho2, 0.0);
  out.baseline = p_far;
  return out;
}

double raw_visibility(double v_net, double signal_rate, double background_rate) {
  if (!(v_net >= 0.0) || v_net > 1.0 + 1e-12)
    throw std::invalid_argument("raw_visibility: v_net must lie in [0, 1]");
  if (signal_rate < 0.0 || background_rate < 0.0)
    throw std::invalid_argument("raw_visibility: rates must be >= 0");
  const double total = signal_rate + background_rate;
  if (!(total > 0.0))
    throw std::invalid_argument("raw_visibility: signal + background must be > 0");
  return v_net * signal_rate / total;
}

}  // namespace sfwm
