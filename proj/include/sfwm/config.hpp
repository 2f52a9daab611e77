#pragma once

// JSON run configuration for the CLI. Config files use lab-friendly units
// (THz, GHz, ps, uW, MHz, ns, us); everything is converted to SI here, once,
// and the resolved SI values are echoed into every output so a result file
// never depends on re-reading its config.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sfwm/counts.hpp"
#include "sfwm/jsa.hpp"

namespace sfwm {

struct GridParams {
  int n_points = 512;
  double n_sigmas = 4.0;
};

struct ScanParams {
  double t_min_s = 1e-12;
  double t_max_s = 64e-12;
  int steps = 64;
  int grid_n = 256;
};

struct HomParams {
  double delay_span_s = 40e-12;  // curve covers [-span, +span]
  int delay_steps = 41;
  double acquisition_s = 1000.0;
  double signal_fraction = 1.0;  // four-fold signal purity at the dip baseline
};

struct CarParams {
  double p_min_w = 1e-6;
  double p_max_w = 200e-6;
  int steps = 40;
  std::vector<std::pair<double, double>> fit_observations;  // (W, CAR)
};

struct McParams {
  std::uint64_t n_pulses = 1000000;
};

struct RunConfig {
  Scenario scenario;
  FilterSpec filter_signal;
  FilterSpec filter_idler;
  PhaseMatchMode mode = PhaseMatchMode::gauss;
  double alpha = default_alpha;
  GridParams grid;
  ScanParams scan;
  HomParams hom;
  CarParams car;
  McParams mc;
  nlohmann::json resolved;  // SI echo of everything above
  std::string config_hash;  // fnv1a64 of the config file bytes
};

// Carries every problem found in one pass, one line each, with the config
// line number where the offending key first appears.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::filesystem::path& file);
RunConfig config_from_text(std::string_view text, const std::string& origin);

}  // namespace sfwm
