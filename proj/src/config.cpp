#include "sfwm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "sfwm/io.hpp"

namespace sfwm {

namespace {

using nlohmann::json;

constexpr double kTwoPi = constants::two_pi;

// Collects problems while the tree is walked so one run reports everything,
// each message prefixed with the line where the offending key first appears.
struct Ctx {
  std::string_view raw;
  std::vector<std::string> errors;

  int line_of(std::string_view key) const {
    const std::string needle = "\"" + std::string(key) + "\"";
    const auto pos = raw.find(needle);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(raw.begin(), raw.begin() + pos, '\n'));
  }

  void fail(const std::string& path, std::string_view line_key, const std::string& what) {
    std::ostringstream os;
    if (const int ln = line_of(line_key)) os << "line " << ln << ": ";
    os << path << ": " << what;
    errors.push_back(os.str());
  }

  void check() const {
    if (errors.empty()) return;
    std::ostringstream os;
    os << "config rejected (" << errors.size() << " problem"
       << (errors.size() > 1 ? "s" : "") << "):";
    for (const auto& e : errors) os << "\n  " << e;
    throw ConfigError(os.str());
  }
};

// One JSON object with a declared key set; typed getters record errors
// instead of throwing so every field gets checked.
class Section {
 public:
  Section(Ctx& ctx, const json* obj, std::string path) : ctx_(ctx), obj_(obj), path_(std::move(path)) {}

  bool present() const { return obj_ != nullptr; }
  bool has(const char* key) const { return obj_ && obj_->contains(key); }

  void allow_only(std::initializer_list<const char*> keys) const {
    if (!obj_) return;
    for (const auto& item : obj_->items()) {
      if (item.key().rfind('_', 0) == 0) continue;  // _comment and friends
      if (std::find_if(keys.begin(), keys.end(), [&](const char* k) {
            return item.key() == k;
          }) == keys.end()) {
        ctx_.fail(path_ + "." + item.key(), item.key(), "unknown key");
      }
    }
  }

  std::optional<double> num(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = (*obj_)[key];
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      ctx_.fail(path_ + "." + key, key, "must be a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<double> req_num(const char* key) const {
    if (!has(key)) {
      ctx_.fail(path_ + "." + key, path_key(), "missing required number");
      return std::nullopt;
    }
    return num(key);
  }

  std::optional<long long> integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = (*obj_)[key];
    if (!v.is_number_integer()) {
      ctx_.fail(path_ + "." + key, key, "must be an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  std::optional<std::string> str(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = (*obj_)[key];
    if (!v.is_string()) {
      ctx_.fail(path_ + "." + key, key, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  const json* child(const char* key) const {
    if (!has(key)) return nullptr;
    const json& v = (*obj_)[key];
    if (!v.is_object()) {
      ctx_.fail(path_ + "." + key, key, "must be an object");
      return nullptr;
    }
    return &v;
  }

  const std::string& path() const { return path_; }
  Ctx& ctx() const { return ctx_; }
  const json* raw_json() const { return obj_; }

 private:
  // For "missing key" messages point at the section header line instead.
  std::string path_key() const {
    const auto dot = path_.rfind('.');
    return dot == std::string::npos ? path_ : path_.substr(dot + 1);
  }

  Ctx& ctx_;
  const json* obj_;
  std::string path_;
};

double ghz_to_rad(double ghz) { return kTwoPi * ghz * 1e9; }

// Exactly-one-of helper for alternative unit spellings.
template <typename T>
std::optional<T> pick_one(Section& s, std::initializer_list<std::pair<const char*, T>> opts) {
  std::optional<T> found;
  int n = 0;
  const char* last = "";
  for (const auto& [key, value] : opts) {
    if (s.has(key)) {
      ++n;
      found = value;
      last = key;
    }
  }
  if (n > 1) s.ctx().fail(s.path(), last, "give only one of the alternative unit keys");
  return n == 1 ? found : std::nullopt;
}

}  // namespace

RunConfig config_from_text(std::string_view text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << origin << ": line " << line << ", column " << col
       << ": not valid JSON: " << e.what();
    throw ConfigError(os.str());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be a JSON object");

  Ctx ctx{text, {}};
  Section top(ctx, &root, "config");
  top.allow_only({"fiber", "pump", "channels", "filters", "detectors", "raman", "scenario",
                  "grid", "scan", "hom", "car", "mc", "mode", "alpha"});

  // ---- pump ----------------------------------------------------------
  Section pump_s(ctx, top.child("pump"), "pump");
  if (!pump_s.present()) ctx.fail("pump", "pump", "missing required section");
  pump_s.allow_only({"frequency_thz", "wavelength_nm", "t_fwhm_ps", "p_avg_uw", "p_avg_w",
                     "rep_rate_mhz", "rep_rate_hz"});

  std::optional<double> omega_p;
  if (pump_s.present()) {
    const auto which = pick_one<int>(pump_s, {{"frequency_thz", 0}, {"wavelength_nm", 1}});
    if (which == 0) {
      if (auto f = pump_s.num("frequency_thz")) omega_p = kTwoPi * *f * 1e12;
    } else if (which == 1) {
      if (auto wl = pump_s.num("wavelength_nm"))
        omega_p = kTwoPi * constants::c_light / (*wl * 1e-9);
    } else {
      ctx.fail("pump", "pump", "need frequency_thz or wavelength_nm");
    }
  }
  const auto t_fwhm = pump_s.present() ? pump_s.req_num("t_fwhm_ps") : std::nullopt;

  std::optional<double> p_avg;
  if (pump_s.present()) {
    if (pump_s.has("p_avg_w")) {
      p_avg = pump_s.num("p_avg_w");
      if (pump_s.has("p_avg_uw")) ctx.fail("pump", "p_avg_uw", "give only one power key");
    } else if (auto uw = pump_s.num("p_avg_uw")) {
      p_avg = *uw * 1e-6;
    } else {
      ctx.fail("pump.p_avg_uw", "pump", "missing required number");
    }
  }
  std::optional<double> rep;
  if (pump_s.present()) {
    if (pump_s.has("rep_rate_hz")) {
      rep = pump_s.num("rep_rate_hz");
    } else if (auto mhz = pump_s.num("rep_rate_mhz")) {
      rep = *mhz * 1e6;
    } else {
      ctx.fail("pump.rep_rate_mhz", "pump", "missing required number");
    }
  }

  std::optional<PumpSpec> pump;
  if (omega_p && t_fwhm && p_avg && rep) {
    try {
      pump.emplace(*omega_p, *t_fwhm * 1e-12, *p_avg, *rep);
    } catch (const std::invalid_argument& e) {
      ctx.fail("pump", "pump", e.what());
    }
  }

  // ---- channels ------------------------------------------------------
  Section chan_s(ctx, top.child("channels"), "channels");
  if (!chan_s.present()) ctx.fail("channels", "channels", "missing required section");
  chan_s.allow_only({"signal_index", "idler_index", "offset_ghz"});

  std::optional<ChannelPair> channel;
  if (chan_s.present() && omega_p) {
    std::optional<double> ws, wi;
    if (chan_s.has("offset_ghz")) {
      if (chan_s.has("signal_index") || chan_s.has("idler_index"))
        ctx.fail("channels", "offset_ghz", "give ITU indices or offset_ghz, not both");
      if (auto off = chan_s.num("offset_ghz")) {
        ws = *omega_p + ghz_to_rad(*off);
        wi = *omega_p - ghz_to_rad(*off);
      }
    } else {
      const auto si = chan_s.integer("signal_index");
      const auto ii = chan_s.integer("idler_index");
      if (!si || !ii) {
        ctx.fail("channels", "channels", "need signal_index and idler_index (or offset_ghz)");
      } else {
        try {
          ws = kTwoPi * itu_channel_freq_hz(static_cast<int>(*si));
          wi = kTwoPi * itu_channel_freq_hz(static_cast<int>(*ii));
        } catch (const std::out_of_range& e) {
          ctx.fail("channels", "signal_index", e.what());
        }
      }
    }
    if (ws && wi) {
      try {
        channel.emplace(*ws, *wi, *omega_p);
      } catch (const std::invalid_argument& e) {
        ctx.fail("channels", "channels", e.what());
      }
    }
  }

  // ---- fiber ---------------------------------------------------------
  Section fiber_s(ctx, top.child("fiber"), "fiber");
  if (!fiber_s.present()) ctx.fail("fiber", "fiber", "missing required section");
  fiber_s.allow_only({"length_m", "gamma_per_w_km", "gamma_per_w_m", "temperature_k",
                      "beta1_ns_km", "beta2_ps2_km", "beta3_ps3_km", "beta4_ps4_km",
                      "calibrate_to_pump_width_ps"});

  std::optional<FiberSpec> fiber;
  if (fiber_s.present()) {
    const auto length = fiber_s.req_num("length_m");
    const auto temperature = fiber_s.req_num("temperature_k");
    std::optional<double> gamma;
    if (fiber_s.has("gamma_per_w_m")) {
      gamma = fiber_s.num("gamma_per_w_m");
      if (fiber_s.has("gamma_per_w_km")) ctx.fail("fiber", "gamma_per_w_km", "give only one gamma key");
    } else if (auto g = fiber_s.num("gamma_per_w_km")) {
      gamma = *g * 1e-3;
    } else {
      ctx.fail("fiber.gamma_per_w_km", "fiber", "missing required number");
    }

    const bool calibrated = fiber_s.has("calibrate_to_pump_width_ps");
    const bool explicit_beta = fiber_s.has("beta2_ps2_km");
    if (calibrated && explicit_beta)
      ctx.fail("fiber", "calibrate_to_pump_width_ps",
               "give beta2_ps2_km or calibrate_to_pump_width_ps, not both");
    if (!calibrated && !explicit_beta)
      ctx.fail("fiber", "fiber", "need beta2_ps2_km or calibrate_to_pump_width_ps");

    if (length && gamma && temperature && omega_p) {
      if (calibrated) {
        if (fiber_s.has("beta1_ns_km") || fiber_s.has("beta3_ps3_km") || fiber_s.has("beta4_ps4_km"))
          ctx.fail("fiber", "calibrate_to_pump_width_ps",
                   "calibration sets the whole beta series; drop the explicit beta keys");
        const auto t_star = fiber_s.num("calibrate_to_pump_width_ps");
        if (t_star && channel) {
          try {
            fiber.emplace(calibrated_symmetric_fiber(*length, *gamma, *temperature, *channel,
                                                     *t_star * 1e-12));
          } catch (const std::exception& e) {
            ctx.fail("fiber", "calibrate_to_pump_width_ps", e.what());
          }
        }
      } else {
        const double b1 = fiber_s.num("beta1_ns_km").value_or(4.9) * 1e-12;
        const double b2 = fiber_s.num("beta2_ps2_km").value_or(0.0) * 1e-27;
        const double b3 = fiber_s.num("beta3_ps3_km").value_or(0.0) * 1e-39;
        const double b4 = fiber_s.num("beta4_ps4_km").value_or(0.0) * 1e-51;
        try {
          fiber.emplace(*length, *gamma, std::array<double, 5>{0.0, b1, b2, b3, b4},
                        *omega_p, *temperature);
        } catch (const std::invalid_argument& e) {
          ctx.fail("fiber", "fiber", e.what());
        }
      }
    }
  }

  // ---- filters -------------------------------------------------------
  const auto parse_filter = [&](const char* key, double center_default) -> std::optional<FilterSpec> {
    Section f(ctx, top.child("filters") ? Section(ctx, top.child("filters"), "filters").child(key) : nullptr,
              std::string("filters.") + key);
    f.allow_only({"fwhm_ghz", "center_offset_ghz", "shape", "order"});
    double fwhm = ghz_to_rad(100.0);
    double center = center_default;
    auto shape = FilterSpec::Shape::supergaussian;
    int order = 3;
    if (f.present()) {
      if (auto v = f.num("fwhm_ghz")) fwhm = ghz_to_rad(*v);
      if (auto v = f.num("center_offset_ghz")) center += ghz_to_rad(*v);
      if (auto s = f.str("shape")) {
        if (*s == "gaussian") shape = FilterSpec::Shape::gaussian;
        else if (*s == "supergaussian") shape = FilterSpec::Shape::supergaussian;
        else if (*s == "rectangular") shape = FilterSpec::Shape::rectangular;
        else ctx.fail(f.path() + ".shape", "shape", "must be gaussian, supergaussian or rectangular");
      }
      if (auto o = f.integer("order")) order = static_cast<int>(*o);
    }
    try {
      return FilterSpec(center, fwhm, shape, order);
    } catch (const std::invalid_argument& e) {
      ctx.fail(f.path(), key, e.what());
      return std::nullopt;
    }
  };

  std::optional<FilterSpec> filter_signal, filter_idler;
  if (top.child("filters")) {
    Section filters_s(ctx, top.child("filters"), "filters");
    filters_s.allow_only({"signal", "idler"});
  }
  if (channel) {
    filter_signal = parse_filter("signal", channel->omega_s0);
    filter_idler = parse_filter("idler", channel->omega_i0);
  }

  // ---- detectors -----------------------------------------------------
  const auto parse_detector = [&](const char* key) -> std::optional<DetectorSpec> {
    const json* dets = top.child("detectors");
    if (!dets) {
      ctx.fail("detectors", "detectors", "missing required section");
      return std::nullopt;
    }
    Section d(ctx, Section(ctx, dets, "detectors").child(key), std::string("detectors.") + key);
    if (!d.present()) {
      ctx.fail(std::string("detectors.") + key, "detectors", "missing required section");
      return std::nullopt;
    }
    d.allow_only({"efficiency", "dark_rate_hz", "dead_time_us", "gate_window_ns", "mode"});
    const auto eff = d.req_num("efficiency");
    const auto dark = d.req_num("dark_rate_hz");
    const auto dead = d.req_num("dead_time_us");
    const auto gate = d.req_num("gate_window_ns");
    auto mode = DetectorSpec::Mode::gated;
    if (auto m = d.str("mode")) {
      if (*m == "gated") mode = DetectorSpec::Mode::gated;
      else if (*m == "free_running") mode = DetectorSpec::Mode::free_running;
      else ctx.fail(d.path() + ".mode", "mode", "must be gated or free_running");
    }
    if (!(eff && dark && dead && gate)) return std::nullopt;
    try {
      return DetectorSpec(*eff, *dark, *dead * 1e-6, *gate * 1e-9, mode);
    } catch (const std::invalid_argument& e) {
      ctx.fail(d.path(), key, e.what());
      return std::nullopt;
    }
  };
  if (top.child("detectors")) {
    Section dets_s(ctx, top.child("detectors"), "detectors");
    dets_s.allow_only({"signal", "idler"});
  }
  auto det_signal = parse_detector("signal");
  auto det_idler = parse_detector("idler");

  // ---- scenario extras ------------------------------------------------
  Section scen_s(ctx, top.child("scenario"), "scenario");
  if (!scen_s.present()) ctx.fail("scenario", "scenario", "missing required section");
  scen_s.allow_only({"capture", "bg_fourfold_per_pulse"});
  const auto capture = scen_s.present() ? scen_s.req_num("capture") : std::nullopt;
  const double bg_fourfold = scen_s.num("bg_fourfold_per_pulse").value_or(0.0);

  // ---- raman ---------------------------------------------------------
  // Signal sits above the pump (anti-Stokes), idler below (Stokes); the
  // phonon shift is the channel offset. Yield comes in either as one shared
  // arriving rate or as per-side coefficients.
  Section raman_s(ctx, top.child("raman"), "raman");
  raman_s.allow_only({"rate_per_w", "signal_coeff_per_w", "idler_coeff_per_w"});
  std::optional<RamanSpec> raman_signal, raman_idler;
  std::optional<double> shared_rate;
  if (channel) {
    const double shift = channel->detuning();
    double cs = 0.0, ci = 0.0;
    if (raman_s.present()) {
      if (raman_s.has("rate_per_w") &&
          (raman_s.has("signal_coeff_per_w") || raman_s.has("idler_coeff_per_w")))
        ctx.fail("raman", "rate_per_w", "give rate_per_w or per-side coefficients, not both");
      shared_rate = raman_s.num("rate_per_w");
      cs = raman_s.num("signal_coeff_per_w").value_or(0.0);
      ci = raman_s.num("idler_coeff_per_w").value_or(0.0);
    }
    try {
      raman_signal.emplace(cs, shift, RamanSpec::Side::anti_stokes);
      raman_idler.emplace(ci, shift, RamanSpec::Side::stokes);
    } catch (const std::invalid_argument& e) {
      ctx.fail("raman", "raman", e.what());
    }
  }

  // ---- run-parameter sections -----------------------------------------
  GridParams grid;
  Section grid_s(ctx, top.child("grid"), "grid");
  grid_s.allow_only({"n_points", "n_sigmas"});
  if (auto n = grid_s.integer("n_points")) grid.n_points = static_cast<int>(*n);
  if (auto s = grid_s.num("n_sigmas")) grid.n_sigmas = *s;
  if (grid.n_points < 16 || grid.n_points % 2 != 0)
    ctx.fail("grid.n_points", "n_points", "must be even and >= 16");
  if (!(grid.n_sigmas > 0.0)) ctx.fail("grid.n_sigmas", "n_sigmas", "must be > 0");

  ScanParams scan;
  Section scan_s(ctx, top.child("scan"), "scan");
  scan_s.allow_only({"t_min_ps", "t_max_ps", "steps", "grid_n"});
  if (auto v = scan_s.num("t_min_ps")) scan.t_min_s = *v * 1e-12;
  if (auto v = scan_s.num("t_max_ps")) scan.t_max_s = *v * 1e-12;
  if (auto v = scan_s.integer("steps")) scan.steps = static_cast<int>(*v);
  if (auto v = scan_s.integer("grid_n")) scan.grid_n = static_cast<int>(*v);
  if (!(scan.t_min_s > 0.0) || !(scan.t_max_s > scan.t_min_s))
    ctx.fail("scan", "t_min_ps", "need 0 < t_min_ps < t_max_ps");
  if (scan.steps < 2) ctx.fail("scan.steps", "steps", "need at least 2 steps");
  if (scan.grid_n < 16 || scan.grid_n % 2 != 0)
    ctx.fail("scan.grid_n", "grid_n", "must be even and >= 16");

  HomParams hom;
  Section hom_s(ctx, top.child("hom"), "hom");
  hom_s.allow_only({"delay_span_ps", "delay_steps", "acquisition_s", "signal_fraction"});
  if (auto v = hom_s.num("delay_span_ps")) hom.delay_span_s = *v * 1e-12;
  if (auto v = hom_s.integer("delay_steps")) hom.delay_steps = static_cast<int>(*v);
  if (auto v = hom_s.num("acquisition_s")) hom.acquisition_s = *v;
  if (auto v = hom_s.num("signal_fraction")) hom.signal_fraction = *v;
  if (!(hom.delay_span_s > 0.0)) ctx.fail("hom.delay_span_ps", "delay_span_ps", "must be > 0");
  if (hom.delay_steps < 2 || hom.delay_steps % 2 == 0)
    ctx.fail("hom.delay_steps", "delay_steps", "must be odd and >= 3 so the curve samples zero delay");
  if (!(hom.acquisition_s > 0.0)) ctx.fail("hom.acquisition_s", "acquisition_s", "must be > 0");
  if (!(hom.signal_fraction > 0.0) || hom.signal_fraction > 1.0)
    ctx.fail("hom.signal_fraction", "signal_fraction", "must lie in (0, 1]");

  CarParams car;
  Section car_s(ctx, top.child("car"), "car");
  car_s.allow_only({"p_min_uw", "p_max_uw", "steps", "fit_observations"});
  if (auto v = car_s.num("p_min_uw")) car.p_min_w = *v * 1e-6;
  if (auto v = car_s.num("p_max_uw")) car.p_max_w = *v * 1e-6;
  if (auto v = car_s.integer("steps")) car.steps = static_cast<int>(*v);
  if (!(car.p_min_w > 0.0) || !(car.p_max_w > car.p_min_w))
    ctx.fail("car", "p_min_uw", "need 0 < p_min_uw < p_max_uw");
  if (car.steps < 2) ctx.fail("car.steps", "steps", "need at least 2 steps");
  if (car_s.has("fit_observations")) {
    const json& obs = (*car_s.raw_json())["fit_observations"];
    if (!obs.is_array() || obs.size() < 2) {
      ctx.fail("car.fit_observations", "fit_observations",
               "must be an array of at least two [p_uw, car] pairs");
    } else {
      for (const auto& row : obs) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
          ctx.fail("car.fit_observations", "fit_observations",
                   "each entry must be a [p_uw, car] number pair");
          break;
        }
        car.fit_observations.emplace_back(row[0].get<double>() * 1e-6, row[1].get<double>());
      }
    }
  }

  McParams mc;
  Section mc_s(ctx, top.child("mc"), "mc");
  mc_s.allow_only({"n_pulses"});
  if (auto v = mc_s.integer("n_pulses")) {
    if (*v <= 0) ctx.fail("mc.n_pulses", "n_pulses", "must be > 0");
    else mc.n_pulses = static_cast<std::uint64_t>(*v);
  }

  auto mode = PhaseMatchMode::gauss;
  if (root.contains("mode")) {
    const auto m = top.str("mode");
    if (m == "gauss") mode = PhaseMatchMode::gauss;
    else if (m == "sinc") mode = PhaseMatchMode::sinc;
    else ctx.fail("mode", "mode", "must be gauss or sinc");
  }
  double alpha = default_alpha;
  if (auto a = top.num("alpha")) {
    alpha = *a;
    if (!(alpha > 0.0)) ctx.fail("alpha", "alpha", "must be > 0");
  }

  ctx.check();

  // All required pieces parsed cleanly; assemble and run the cross-object
  // invariants (pump at channel midpoint, capture range, ...).
  std::optional<Scenario> scenario;
  try {
    if (shared_rate) {
      // One arriving rate split onto the sides by their phonon occupation,
      // so both arms see rate_per_w * P_avg photons per pulse.
      const double occ_s = raman_occupation(*raman_signal, fiber->temperature_k);
      const double occ_i = raman_occupation(*raman_idler, fiber->temperature_k);
      if (!(occ_s > 0.0) || !(occ_i > 0.0))
        throw std::domain_error(
            "raman.rate_per_w: phonon occupation vanishes at this temperature; give "
            "per-side coefficients instead");
      raman_signal.emplace(*shared_rate / occ_s, raman_signal->phonon_shift,
                           raman_signal->side);
      raman_idler.emplace(*shared_rate / occ_i, raman_idler->phonon_shift,
                          raman_idler->side);
    }
    scenario.emplace(*fiber, *pump, *channel, *capture, *det_signal, *det_idler,
                     *raman_signal, *raman_idler, bg_fourfold);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config rejected (1 problem):\n  ") + e.what());
  }

  RunConfig cfg{*scenario, *filter_signal, *filter_idler, mode,   alpha, grid,
                scan,      hom,            car,           mc,     {},    {}};

  json& r = cfg.resolved;
  r["fiber"] = {{"length_m", cfg.scenario.fiber.length_m},
                {"gamma_per_w_m", cfg.scenario.fiber.gamma_per_w_m},
                {"beta_si", cfg.scenario.fiber.beta},
                {"omega_ref_rad_s", cfg.scenario.fiber.omega_ref},
                {"temperature_k", cfg.scenario.fiber.temperature_k}};
  r["pump"] = {{"omega0_rad_s", cfg.scenario.pump.omega0},
               {"t_fwhm_s", cfg.scenario.pump.t_fwhm_s},
               {"p_avg_w", cfg.scenario.pump.p_avg_w},
               {"rep_rate_hz", cfg.scenario.pump.rep_rate_hz},
               {"sigma_p_rad_s", cfg.scenario.pump.sigma_p()},
               {"peak_power_w", cfg.scenario.pump.peak_power_w()}};
  r["channel"] = {{"omega_s0_rad_s", cfg.scenario.channel.omega_s0},
                  {"omega_i0_rad_s", cfg.scenario.channel.omega_i0}};
  const auto filter_json = [](const FilterSpec& f) {
    const char* shape = f.shape == FilterSpec::Shape::gaussian        ? "gaussian"
                        : f.shape == FilterSpec::Shape::supergaussian ? "supergaussian"
                                                                      : "rectangular";
    return json{{"center_rad_s", f.center}, {"fwhm_rad_s", f.fwhm}, {"shape", shape},
                {"order", f.order}};
  };
  r["filters"] = {{"signal", filter_json(cfg.filter_signal)},
                  {"idler", filter_json(cfg.filter_idler)}};
  const auto det_json = [](const DetectorSpec& d) {
    return json{{"efficiency", d.efficiency},
                {"dark_rate_hz", d.dark_rate_hz},
                {"dead_time_s", d.dead_time_s},
                {"gate_window_s", d.gate_window_s},
                {"mode", d.mode == DetectorSpec::Mode::gated ? "gated" : "free_running"}};
  };
  r["detectors"] = {{"signal", det_json(cfg.scenario.det_signal)},
                    {"idler", det_json(cfg.scenario.det_idler)}};
  const auto raman_json = [](const RamanSpec& rs) {
    return json{{"coeff_per_w", rs.coeff_per_w},
                {"phonon_shift_rad_s", rs.phonon_shift},
                {"side", rs.side == RamanSpec::Side::stokes ? "stokes" : "anti_stokes"}};
  };
  r["raman"] = {{"signal", raman_json(cfg.scenario.raman_signal)},
                {"idler", raman_json(cfg.scenario.raman_idler)}};
  r["scenario"] = {{"capture", cfg.scenario.capture},
                   {"bg_fourfold_per_pulse", cfg.scenario.bg_fourfold_per_pulse}};
  r["mode"] = mode == PhaseMatchMode::gauss ? "gauss" : "sinc";
  r["alpha"] = alpha;
  r["grid"] = {{"n_points", grid.n_points}, {"n_sigmas", grid.n_sigmas}};
  r["scan"] = {{"t_min_s", scan.t_min_s},
               {"t_max_s", scan.t_max_s},
               {"steps", scan.steps},
               {"grid_n", scan.grid_n}};
  r["hom"] = {{"delay_span_s", hom.delay_span_s},
              {"delay_steps", hom.delay_steps},
              {"acquisition_s", hom.acquisition_s},
              {"signal_fraction", hom.signal_fraction}};
  json fit_obs = json::array();
  for (const auto& [p, c] : car.fit_observations) fit_obs.push_back({p, c});
  r["car"] = {{"p_min_w", car.p_min_w},
              {"p_max_w", car.p_max_w},
              {"steps", car.steps},
              {"fit_observations_w_car", fit_obs}};
  r["mc"] = {{"n_pulses", mc.n_pulses}};

  cfg.config_hash = io::hex64(io::fnv1a64(text));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_text(ss.str(), file.string());
}

}  // namespace sfwm
