#pragma once

// Schmidt decomposition of a sampled JSA and the marginal (heralded
// single-photon) density matrices derived from it. The decomposition is a
// plain SVD of the amplitude matrix; with the discrete sum-of-squares
// normalization the Schmidt weights are g_n = s_n^2 / sum_m s_m^2 and the
// heralded purity is p = sum_n g_n^2.

#include <vector>

#include <Eigen/Dense>

#include "sfwm/jsa.hpp"

namespace sfwm {

struct SchmidtResult {
  // Weights g_n, descending, truncated once g_n drops below the requested
  // threshold. purity and schmidt_number are computed before truncation.
  std::vector<double> weights;
  // Discrete-orthonormal mode columns (U and V of the SVD), one column per
  // kept weight; divide by sqrt(grid step) for functions normalized in rad/s.
  Eigen::MatrixXd signal_modes;
  Eigen::MatrixXd idler_modes;
  double purity;          // sum g_n^2
  double schmidt_number;  // 1 / purity
};

SchmidtResult schmidt_decompose(const JsaGrid& grid, double weight_threshold = 1e-12);

// Closed form for the quadratic JSA model: p = sqrt(1 - c^2 / (a*b)).
double purity_gauss_analytic(const GaussJsaCoeffs& coeffs);

// Marginal state of one photon after tracing out the other, as a real
// symmetric unit-trace matrix over the kept detuning axis.
struct DensityMatrix {
  Eigen::MatrixXd rho;
  Eigen::VectorXd axis;   // detunings, rad/s
  double omega_center;    // absolute center of the kept channel, rad/s

  DensityMatrix(Eigen::MatrixXd rho, Eigen::VectorXd axis, double omega_center);

  double purity() const { return (rho * rho).trace(); }
};

enum class Party { signal, idler };

DensityMatrix reduced_density(const JsaGrid& grid, Party keep);

// Heralded purity vs pump intensity FWHM for a fixed geometry, computed both
// ways (closed form and SVD of the sampled model JSA) so disagreement flags a
// broken route rather than averaging into a silently wrong number.
struct PurityScanRow {
  double t_fwhm_s;
  double purity_analytic;
  double purity_svd;
};

std::vector<PurityScanRow> purity_scan(const FiberSpec& fiber, const ChannelPair& channel,
                                       double t_fwhm_min_s, double t_fwhm_max_s, int n_steps,
                                       double alpha = default_alpha, int grid_n = 256,
                                       double n_sigmas = 4.0);

}  // namespace sfwm
