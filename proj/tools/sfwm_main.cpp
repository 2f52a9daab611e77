// sfwm: command-line front end for the pair-source library. Subcommands
// compute the joint spectral intensity, purity-vs-pump-width scans, HOM dip
// curves, CAR-vs-power curves, and the Monte Carlo cross-checks of the last
// two. Results are CSV plus a JSON summary carrying the resolved config and
// its content hash; no timestamps, so identical inputs give identical bytes.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfwm/config.hpp"
#include "sfwm/counts.hpp"
#include "sfwm/hom.hpp"
#include "sfwm/io.hpp"
#include "sfwm/jsa.hpp"
#include "sfwm/schmidt.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string mode;  // empty = take from config
  int grid_n = 0;    // 0 = take from config
  std::uint64_t seed = 12345;
};

fs::path resolve_out_dir(const Options& opt) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv("SFWM_OUT_DIR"); env && *env) return env;
  return ".";
}

void apply_overrides(sfwm::RunConfig& cfg, const Options& opt) {
  if (opt.mode == "gauss") cfg.mode = sfwm::PhaseMatchMode::gauss;
  if (opt.mode == "sinc") cfg.mode = sfwm::PhaseMatchMode::sinc;
  if (opt.grid_n > 0) {
    cfg.grid.n_points = opt.grid_n;
    if (opt.grid_n < 16 || opt.grid_n % 2 != 0)
      throw std::invalid_argument("--grid must be even and >= 16");
  }
}

json run_header(const sfwm::RunConfig& cfg, const char* command) {
  return json{{"tool", "sfwm"},
              {"version", kVersion},
              {"command", command},
              {"config_hash", cfg.config_hash},
              {"config", cfg.resolved}};
}

void write_json(const fs::path& path, const json& j) {
  sfwm::io::write_file_atomic(path, j.dump(2) + "\n");
}

// The model JSA for the configured mode: the quadratic Gaussian form, or the
// exact-dispersion sinc JSA sampled on the same grid.
sfwm::JsaGrid build_configured_jsa(const sfwm::RunConfig& cfg, int n_points) {
  const auto& sc = cfg.scenario;
  const auto coeffs = sfwm::gauss_coeffs(sc.fiber, sc.pump, sc.channel, cfg.alpha);
  const auto grid = sfwm::default_grid(coeffs, n_points, cfg.grid.n_sigmas);
  if (cfg.mode == sfwm::PhaseMatchMode::gauss)
    return sfwm::build_gauss_jsa(coeffs, sc.channel, grid);
  return sfwm::build_jsa(sc.fiber, sc.pump, sc.channel, grid, sfwm::PhaseMatchMode::sinc,
                         cfg.alpha);
}

int cmd_jsi(const sfwm::RunConfig& cfg, const fs::path& out) {
  const auto& sc = cfg.scenario;
  const auto coeffs = sfwm::gauss_coeffs(sc.fiber, sc.pump, sc.channel, cfg.alpha);
  const auto jsa = build_configured_jsa(cfg, cfg.grid.n_points);
  const auto filtered = sfwm::apply_filters(jsa, cfg.filter_signal, cfg.filter_idler);

  sfwm::io::CsvBuilder csv({"delta_s_rad_s", "delta_i_rad_s", "intensity_norm"});
  for (Eigen::Index j = 0; j < jsa.delta_s.size(); ++j)
    for (Eigen::Index k = 0; k < jsa.delta_i.size(); ++k)
      csv.add_row({jsa.delta_s(j), jsa.delta_i(k), jsa.amp(j, k) * jsa.amp(j, k)});
  sfwm::io::write_file_atomic(out / "jsi.csv", csv.str());

  const auto schmidt = sfwm::schmidt_decompose(jsa);
  const auto schmidt_f = sfwm::schmidt_decompose(filtered);

  json meta = run_header(cfg, "jsi");
  meta["coeffs_s2"] = {{"a", coeffs.a}, {"b", coeffs.b}, {"c", coeffs.c}};
  meta["marginal_std_signal_rad_s"] = coeffs.marginal_std_signal();
  meta["marginal_std_idler_rad_s"] = coeffs.marginal_std_idler();
  meta["purity_analytic_unfiltered"] = sfwm::purity_gauss_analytic(coeffs);
  meta["purity_svd_unfiltered"] = schmidt.purity;
  meta["purity_svd_filtered"] = schmidt_f.purity;
  meta["schmidt_number_unfiltered"] = schmidt.schmidt_number;
  meta["heralding_efficiency_filtered"] = filtered.heralding_efficiency;
  meta["edge_mass"] = jsa.edge_mass;
  meta["range_warning"] = jsa.range_warning();
  meta["grid"] = {{"n_points", cfg.grid.n_points},
                  {"half_range_s_rad_s", jsa.delta_s(jsa.delta_s.size() - 1)},
                  {"half_range_i_rad_s", jsa.delta_i(jsa.delta_i.size() - 1)}};
  write_json(out / "jsi_meta.json", meta);

  std::cout << "jsi: purity (analytic " << sfwm::purity_gauss_analytic(coeffs) << ", svd "
            << schmidt.purity << "), filtered svd " << schmidt_f.purity << ", wrote "
            << (out / "jsi.csv").string() << "\n";
  if (jsa.range_warning())
    std::cout << "warning: " << jsa.edge_mass
              << " of the intensity sits on the grid edge; widen grid.n_sigmas\n";
  return 0;
}

int cmd_purity_scan(const sfwm::RunConfig& cfg, const fs::path& out) {
  const auto& sc = cfg.scenario;
  const auto rows = sfwm::purity_scan(sc.fiber, sc.channel, cfg.scan.t_min_s,
                                      cfg.scan.t_max_s, cfg.scan.steps, cfg.alpha,
                                      cfg.scan.grid_n, cfg.grid.n_sigmas);

  sfwm::io::CsvBuilder csv({"t_fwhm_ps", "purity_analytic", "purity_svd"});
  std::size_t best = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    csv.add_row({rows[k].t_fwhm_s * 1e12, rows[k].purity_analytic, rows[k].purity_svd});
    if (rows[k].purity_analytic > rows[best].purity_analytic) best = k;
  }
  sfwm::io::write_file_atomic(out / "purity_scan.csv", csv.str());

  json meta = run_header(cfg, "purity-scan");
  meta["argmax"] = {{"t_fwhm_s", rows[best].t_fwhm_s},
                    {"purity_analytic", rows[best].purity_analytic},
                    {"purity_svd", rows[best].purity_svd}};
  try {
    meta["optimal_t_fwhm_s"] = sfwm::optimal_pump_width(sc.fiber, sc.channel, cfg.alpha);
  } catch (const std::domain_error& e) {
    meta["optimal_t_fwhm_s"] = nullptr;
    meta["optimal_t_fwhm_note"] = e.what();
  }
  write_json(out / "purity_scan_meta.json", meta);

  std::cout << "purity-scan: max analytic purity " << rows[best].purity_analytic
            << " at t_fwhm = " << rows[best].t_fwhm_s * 1e12 << " ps over "
            << rows.size() << " widths, wrote " << (out / "purity_scan.csv").string()
            << "\n";
  return 0;
}

std::vector<double> hom_delays(const sfwm::HomParams& hom) {
  std::vector<double> delays(static_cast<std::size_t>(hom.delay_steps));
  for (int k = 0; k < hom.delay_steps; ++k)
    delays[static_cast<std::size_t>(k)] =
        -hom.delay_span_s + 2.0 * hom.delay_span_s * k / (hom.delay_steps - 1);
  // Land the center sample exactly on zero delay (delay_steps is odd).
  delays[static_cast<std::size_t>(hom.delay_steps / 2)] = 0.0;
  return delays;
}

int cmd_hom(const sfwm::RunConfig& cfg, const fs::path& out) {
  const auto& sc = cfg.scenario;
  const auto jsa = build_configured_jsa(cfg, cfg.grid.n_points);
  const auto filtered = sfwm::apply_filters(jsa, cfg.filter_signal, cfg.filter_idler);
  const auto rho = sfwm::reduced_density(filtered, sfwm::Party::signal);

  const auto delays = hom_delays(cfg.hom);
  const auto dip = sfwm::dip_curve(rho, rho, delays);
  const double v_raw =
      sfwm::raw_visibility(dip.v_net, cfg.hom.signal_fraction, 1.0 - cfg.hom.signal_fraction);

  const double bg_pp = cfg.scenario.bg_fourfold_per_pulse > 0.0
                           ? cfg.scenario.bg_fourfold_per_pulse
                           : sfwm::hom_background_for_fraction(sc, sc.pump.p_avg_w,
                                                               cfg.hom.signal_fraction);
  const double pulses_per_acq = cfg.hom.acquisition_s * sc.pump.rep_rate_hz;

  sfwm::io::CsvBuilder csv({"delay_ps", "coincidence_prob", "expected_fourfolds"});
  for (std::size_t k = 0; k < delays.size(); ++k) {
    const double overlap = 1.0 - 2.0 * dip.coincidence_prob[k];
    const double expected =
        pulses_per_acq *
        (sfwm::hom_signal_fourfold_per_pulse(sc, sc.pump.p_avg_w, overlap) + bg_pp);
    csv.add_row({delays[k] * 1e12, dip.coincidence_prob[k], expected});
  }
  sfwm::io::write_file_atomic(out / "hom_dip.csv", csv.str());

  json meta = run_header(cfg, "hom");
  meta["v_net"] = dip.v_net;
  meta["v_raw"] = v_raw;
  meta["signal_fraction"] = cfg.hom.signal_fraction;
  meta["baseline_prob"] = dip.baseline;
  meta["heralded_purity"] = rho.purity();
  meta["heralding_efficiency_filtered"] = filtered.heralding_efficiency;
  meta["bg_fourfold_per_pulse"] = bg_pp;
  meta["acquisition_s"] = cfg.hom.acquisition_s;
  write_json(out / "hom_summary.json", meta);

  std::cout << "hom: v_net = " << dip.v_net << ", v_raw = " << v_raw << " at signal fraction "
            << cfg.hom.signal_fraction << ", wrote " << (out / "hom_dip.csv").string()
            << "\n";
  return 0;
}

json fit_to_json(const sfwm::NoiseFit& fit) {
  return json{{"raman_rate_per_w", fit.raman_rate_per_w},
              {"dark_rate_hz", fit.dark_rate_hz},
              {"rms_log_residual", fit.rms_log_residual},
              {"iterations", fit.iterations}};
}

int cmd_car(const sfwm::RunConfig& cfg, const fs::path& out) {
  sfwm::Scenario scenario = cfg.scenario;
  json meta = run_header(cfg, "car");

  if (!cfg.car.fit_observations.empty()) {
    const auto fit = sfwm::fit_noise(scenario, cfg.car.fit_observations);
    scenario = sfwm::with_noise(scenario, fit.raman_rate_per_w, fit.dark_rate_hz);
    meta["noise_fit"] = fit_to_json(fit);
  }

  sfwm::io::CsvBuilder csv({"p_avg_uw", "car", "pairs_per_pulse", "true_per_pulse",
                            "accidental_per_pulse", "singles_s_per_pulse",
                            "singles_i_per_pulse"});
  for (int k = 0; k < cfg.car.steps; ++k) {
    const double p = cfg.car.p_min_w +
                     (cfg.car.p_max_w - cfg.car.p_min_w) * k / (cfg.car.steps - 1);
    const auto pt = sfwm::car_model(scenario, p);
    csv.add_row({p * 1e6, pt.car, pt.pairs_per_pulse, pt.true_per_pulse,
                 pt.accidental_per_pulse, pt.singles_s_per_pulse, pt.singles_i_per_pulse});
  }
  sfwm::io::write_file_atomic(out / "car_curve.csv", csv.str());

  const auto peak = sfwm::car_peak(scenario, cfg.car.p_min_w, cfg.car.p_max_w);
  meta["peak"] = {{"p_opt_w", peak.p_opt_w}, {"car_max", peak.car_max}};
  const auto at_cfg = sfwm::car_model(scenario, cfg.scenario.pump.p_avg_w);
  meta["at_configured_power"] = {{"p_avg_w", at_cfg.p_avg_w},
                                 {"car", at_cfg.car},
                                 {"pairs_per_pulse", at_cfg.pairs_per_pulse}};
  write_json(out / "car_summary.json", meta);

  std::cout << "car: peak CAR " << peak.car_max << " at P_avg = " << peak.p_opt_w * 1e6
            << " uW, wrote " << (out / "car_curve.csv").string() << "\n";
  return 0;
}

int cmd_mc_car(const sfwm::RunConfig& cfg, const fs::path& out, std::uint64_t seed) {
  const auto& sc = cfg.scenario;
  const auto model = sfwm::car_model(sc, sc.pump.p_avg_w);
  const auto mc = sfwm::mc_run_car(sc, sc.pump.p_avg_w, cfg.mc.n_pulses, seed);
  const double z = (mc.car - model.car) / mc.car_stderr;

  json meta = run_header(cfg, "mc-car");
  meta["seed"] = seed;
  meta["n_pulses"] = mc.n_pulses;
  meta["model"] = {{"car", model.car},
                   {"pairs_per_pulse", model.pairs_per_pulse},
                   {"singles_s_per_pulse", model.singles_s_per_pulse},
                   {"singles_i_per_pulse", model.singles_i_per_pulse}};
  meta["mc"] = {{"car", mc.car},
                {"car_stderr", mc.car_stderr},
                {"singles_s", mc.singles_s},
                {"singles_i", mc.singles_i},
                {"coincidences", mc.coincidences},
                {"accidental_per_pulse", mc.accidental_per_pulse}};
  meta["z_score"] = z;
  write_json(out / "mc_car.json", meta);

  std::cout << "mc-car: model CAR " << model.car << ", MC CAR " << mc.car << " +- "
            << mc.car_stderr << " (z = " << z << "), wrote "
            << (out / "mc_car.json").string() << "\n";
  return 0;
}

int cmd_mc_hom(const sfwm::RunConfig& cfg, const fs::path& out, std::uint64_t seed) {
  sfwm::Scenario scenario = cfg.scenario;
  const auto jsa = build_configured_jsa(cfg, cfg.grid.n_points);
  const auto filtered = sfwm::apply_filters(jsa, cfg.filter_signal, cfg.filter_idler);
  const auto rho = sfwm::reduced_density(filtered, sfwm::Party::signal);

  const auto delays = hom_delays(cfg.hom);
  std::vector<double> overlaps;
  overlaps.reserve(delays.size());
  for (double tau : delays) overlaps.push_back(sfwm::dip_overlap(rho, rho, tau));

  if (scenario.bg_fourfold_per_pulse == 0.0 && cfg.hom.signal_fraction < 1.0)
    scenario.bg_fourfold_per_pulse = sfwm::hom_background_for_fraction(
        scenario, scenario.pump.p_avg_w, cfg.hom.signal_fraction);

  const auto points = sfwm::mc_run_hom(scenario, delays, overlaps, cfg.mc.n_pulses, seed);
  const double scale =
      cfg.hom.acquisition_s * scenario.pump.rep_rate_hz / static_cast<double>(cfg.mc.n_pulses);

  sfwm::io::CsvBuilder csv({"delay_ps", "overlap", "fourfolds_raw", "fourfolds_per_acq",
                            "stderr_per_acq", "model_fourfolds_per_acq"});
  const sfwm::McHomPoint* center = nullptr;
  const sfwm::McHomPoint* far = nullptr;
  for (const auto& pt : points) {
    const double model_rate =
        sfwm::hom_signal_fourfold_per_pulse(scenario, scenario.pump.p_avg_w, pt.overlap) +
        scenario.bg_fourfold_per_pulse;
    csv.add_row({pt.delay_s * 1e12, pt.overlap, static_cast<double>(pt.fourfolds),
                 static_cast<double>(pt.fourfolds) * scale,
                 std::sqrt(static_cast<double>(pt.fourfolds)) * scale,
                 model_rate * static_cast<double>(pt.n_pulses) * scale});
    if (pt.delay_s == 0.0) center = &pt;
    if (!far || std::abs(pt.delay_s) >= std::abs(far->delay_s)) far = &pt;
  }
  sfwm::io::write_file_atomic(out / "mc_hom.csv", csv.str());

  json meta = run_header(cfg, "mc-hom");
  meta["seed"] = seed;
  meta["n_pulses_per_delay"] = cfg.mc.n_pulses;
  meta["acquisition_s"] = cfg.hom.acquisition_s;
  meta["bg_fourfold_per_pulse"] = scenario.bg_fourfold_per_pulse;
  if (center && far && far->fourfolds > 0 && center->delay_s != far->delay_s) {
    const double c0 = static_cast<double>(center->fourfolds);
    const double cb = static_cast<double>(far->fourfolds);
    const double v = 1.0 - c0 / cb;
    const double v_err = (c0 / cb) * std::sqrt(1.0 / c0 + 1.0 / cb);
    meta["v_raw_mc"] = v;
    meta["v_raw_mc_stderr"] = v_err;
    meta["v_raw_model"] = sfwm::raw_visibility(overlaps[delays.size() / 2],
                                               cfg.hom.signal_fraction,
                                               1.0 - cfg.hom.signal_fraction);
    std::cout << "mc-hom: v_raw = " << v << " +- " << v_err << " (model "
              << meta["v_raw_model"].get<double>() << "), wrote "
              << (out / "mc_hom.csv").string() << "\n";
  } else {
    meta["v_raw_mc"] = nullptr;
    std::cout << "mc-hom: too few counts for a visibility estimate, wrote "
              << (out / "mc_hom.csv").string() << "\n";
  }
  write_json(out / "mc_hom_summary.json", meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sfwm: photon-pair source simulator for dispersion-shifted fiber"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  const auto add_common = [&](CLI::App* sub, bool with_seed, bool with_grid) {
    sub->add_option("--config", opt.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir,
                    "output directory (default: $SFWM_OUT_DIR, then current directory)");
    sub->add_option("--mode", opt.mode, "phase-matching model override")
        ->check(CLI::IsMember({"gauss", "sinc"}));
    if (with_grid) sub->add_option("--grid", opt.grid_n, "grid points per axis override");
    if (with_seed) sub->add_option("--seed", opt.seed, "Monte Carlo seed (default 12345)");
    sub->callback([&command, sub] { command = sub->get_name(); });
  };

  add_common(app.add_subcommand("jsi", "joint spectral intensity and purity"), false, true);
  add_common(app.add_subcommand("purity-scan", "heralded purity vs pump width"), false, false);
  add_common(app.add_subcommand("hom", "HOM dip curve and visibilities"), false, true);
  add_common(app.add_subcommand("car", "CAR vs average pump power, with optional noise fit"),
             false, false);
  add_common(app.add_subcommand("mc-car", "Monte Carlo cross-check of the CAR model"), true,
             false);
  add_common(app.add_subcommand("mc-hom", "Monte Carlo four-fold HOM dip"), true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    sfwm::RunConfig cfg = sfwm::load_config(opt.config_path);
    apply_overrides(cfg, opt);
    const fs::path out = resolve_out_dir(opt);

    if (command == "jsi") return cmd_jsi(cfg, out);
    if (command == "purity-scan") return cmd_purity_scan(cfg, out);
    if (command == "hom") return cmd_hom(cfg, out);
    if (command == "car") return cmd_car(cfg, out);
    if (command == "mc-car") return cmd_mc_car(cfg, out, opt.seed);
    if (command == "mc-hom") return cmd_mc_hom(cfg, out, opt.seed);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const sfwm::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
