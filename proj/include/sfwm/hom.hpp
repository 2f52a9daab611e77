#pragma once

// Hong-Ou-Mandel interference between heralded photons from two independent
// sources. For mixed states with identical frequency axes the net dip
// visibility equals the state overlap Tr(rho1 rho2), and the coincidence
// probability at relative delay tau is P(tau) = (1 - J(tau)) / 2 with
//   J(tau) = sum_jk rho1[j,k] rho2[k,j] cos((w_j - w_k) tau),
// so J(0) = Tr(rho1 rho2) and P at large delay returns to 1/2.

#include <vector>

#include "sfwm/schmidt.hpp"

namespace sfwm {

struct VisibilityResult {
  double value;            // Tr(rho1 rho2)
  double purity1;          // Tr(rho1^2)
  double purity2;          // Tr(rho2^2)
  double hs_distance_sq;   // ||rho1 - rho2||_F^2

  // The overlap identity value = (purity1 + purity2 - hs_distance_sq) / 2
  // holds exactly; recomputing the right-hand side gives tests an internal
  // consistency handle.
  double identity_rhs() const { return 0.5 * (purity1 + purity2 - hs_distance_sq); }
};

VisibilityResult visibility(const DensityMatrix& rho1, const DensityMatrix& rho2);

// J(tau) for one delay. Valid while |tau| stays below pi / axis step (beyond
// that the discrete frequency comb aliases); throws std::out_of_range past it.
double dip_overlap(const DensityMatrix& rho1, const DensityMatrix& rho2, double tau_s);

struct DipCurve {
  std::vector<double> delays_s;
  std::vector<double> coincidence_prob;  // (1 - J(tau)) / 2
  double v_net;                          // J(0), whether or not 0 is sampled
  double baseline;                       // P at the largest sampled |delay|
};

DipCurve dip_curve(const DensityMatrix& rho1, const DensityMatrix& rho2,
                   const std::vector<double>& delays_s);

// Fold uninterfering background coincidences into a net visibility:
// v_raw = v_net * signal / (signal + background). Rates may be any
// proportional units (per pulse, per second, absolute counts).
double raw_visibility(double v_net, double signal_rate, double background_rate);

}  // namespace sfwm
