#include "sfwm/schmidt.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace sfwm {

SchmidtResult schmidt_decompose(const JsaGrid& grid, double weight_threshold) {
  if (weight_threshold < 0.0)
    throw std::invalid_argument("schmidt_decompose: weight_threshold must be >= 0");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(grid.amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();

  const double total = s.squaredNorm();  // = 1 for a normalized grid
  double purity = 0.0;
  for (Eigen::Index n = 0; n < s.size(); ++n) {
    const double g = s(n) * s(n) / total;
    purity += g * g;
  }

  SchmidtResult out;
  out.purity = purity;
  out.schmidt_number = 1.0 / purity;

  Eigen::Index kept = 0;
  while (kept < s.size() && s(kept) * s(kept) / total >= weight_threshold) ++kept;
  if (kept == 0) kept = 1;  // always report the dominant mode

  out.weights.reserve(static_cast<std::size_t>(kept));
  for (Eigen::Index n = 0; n < kept; ++n)
    out.weights.push_back(s(n) * s(n) / total);
  out.signal_modes = svd.matrixU().leftCols(kept);
  out.idler_modes = svd.matrixV().leftCols(kept);
  return out;
}

double purity_gauss_analytic(const GaussJsaCoeffs& coeffs) {
  return std::sqrt(1.0 - coeffs.c * coeffs.c / (coeffs.a * coeffs.b));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXd rho_in, Eigen::VectorXd axis_in,
                             double omega_center)
    : rho(std::move(rho_in)), axis(std::move(axis_in)), omega_center(omega_center) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("DensityMatrix: must be square");
  if (rho.rows() != axis.size())
    throw std::invalid_argument("DensityMatrix: axis length must match the matrix");

  const double asym = (rho - rho.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * rho.cwiseAbs().maxCoeff())
    throw std::invalid_argument("DensityMatrix: input is not symmetric");
  rho = 0.5 * (rho + rho.transpose().eval());

  const double tr = rho.trace();
  if (!(tr > 0.0) || !std::isfinite(tr))
    throw std::runtime_error("DensityMatrix: trace must be positive and finite");
  rho /= tr;
}

DensityMatrix reduced_density(const JsaGrid& grid, Party keep) {
  if (keep == Party::signal) {
    return DensityMatrix(grid.amp * grid.amp.transpose(), grid.delta_s,
                         grid.channel.omega_s0);
  }
  return DensityMatrix(grid.amp.transpose() * grid.amp, grid.delta_i,
                       grid.channel.omega_i0);
}

std::vector<PurityScanRow> purity_scan(const FiberSpec& fiber, const ChannelPair& channel,
                                       double t_fwhm_min_s, double t_fwhm_max_s, int n_steps,
                                       double alpha, int grid_n, double n_sigmas) {
  if (!(t_fwhm_min_s > 0.0) || !(t_fwhm_max_s > t_fwhm_min_s))
    throw std::invalid_argument("purity_scan: need 0 < t_fwhm_min_s < t_fwhm_max_s");
  if (n_steps < 2) throw std::invalid_argument("purity_scan: need at least 2 steps");

  std::vector<PurityScanRow> rows;
  rows.reserve(static_cast<std::size_t>(n_steps));
  const double dt = (t_fwhm_max_s - t_fwhm_min_s) / (n_steps - 1);
  for (int k = 0; k < n_steps; ++k) {
    const double t = t_fwhm_min_s + k * dt;
    const PumpSpec pump(channel.pump_center(), t, 0.0, 1.0);
    const GaussJsaCoeffs coeffs = gauss_coeffs(fiber, pump, channel, alpha);
    const JsaGrid jsa =
        build_gauss_jsa(coeffs, channel, default_grid(coeffs, grid_n, n_sigmas));
    rows.push_back({t, purity_gauss_analytic(coeffs), schmidt_decompose(jsa).purity});
  }
  return rows;
}

}  // namespace sfwm
