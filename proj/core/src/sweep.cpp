#include "mollow/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "mollow/correlations.hpp"
#include "mollow/error.hpp"
#include "mollow/format.hpp"
#include "mollow/parallel.hpp"

#ifndef MOLLOW_VERSION
#define MOLLOW_VERSION "unknown"
#endif

namespace mollow {

using nlohmann::json;

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Map: return "map";
    case Mode::Csi: return "csi";
    case Mode::Dynamics: return "dynamics";
    case Mode::OracleCheck: return "oracle-check";
    case Mode::Resolution: return "resolution";
  }
  return "map";
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
  for (Mode m : {Mode::Map, Mode::Csi, Mode::Dynamics, Mode::OracleCheck, Mode::Resolution})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

std::string_view to_string(OutputFormat format) noexcept {
  return format == OutputFormat::Json ? "json" : "csv";
}

std::optional<OutputFormat> parse_format(std::string_view text) noexcept {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

double AxisGrid::at(int i) const noexcept {
  if (i == 0 || steps <= 1) return min;
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<double> AxisGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string_view s = trim(text);
  const auto pi_at = s.find("pi");
  if (pi_at == std::string_view::npos) {
    if (auto v = parse_number(s)) return *v;
    throw ConfigError("angle", "cannot parse '" + std::string(text) + "'");
  }
  std::string_view coef = trim(s.substr(0, pi_at));
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    auto v = parse_number(coef);
    if (!v) throw ConfigError("angle", "cannot parse '" + std::string(text) + "'");
    factor = *v;
  }
  std::string_view rest = trim(s.substr(pi_at + 2));
  if (!rest.empty()) {
    if (rest.front() != '/')
      throw ConfigError("angle", "cannot parse '" + std::string(text) + "'");
    auto den = parse_number(rest.substr(1));
    if (!den || *den == 0.0)
      throw ConfigError("angle", "cannot parse '" + std::string(text) + "'");
    factor /= *den;
  }
  return factor * kPi;
}

AxisGrid parse_axis(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos)
    throw ConfigError("grid", "expected min:max:steps, got '" + std::string(text) + "'");
  AxisGrid g;
  g.min = parse_angle(text.substr(0, first));
  g.max = parse_angle(text.substr(first + 1, second - first - 1));
  const auto steps = parse_number(text.substr(second + 1));
  if (!steps || *steps != std::floor(*steps))
    throw ConfigError("grid", "steps must be an integer");
  g.steps = static_cast<int>(*steps);
  return g;
}

std::unique_ptr<CouplingModel> make_coupling_model(const std::string& name) {
  if (name == "free-space-perpendicular") return std::make_unique<PerpendicularDipoleCoupling>();
  if (name == "free-space-parallel") return std::make_unique<ParallelDipoleCoupling>();
  throw ConfigError("drive.coupling", "unknown coupling model '" + name + "'");
}

DressedParams DriveConfig::params() const {
  double det = detuning;
  if (mixing_angle) det = 2.0 * rabi / std::tan(2.0 * *mixing_angle);
  return DressedParams::make(rabi, det, gammas);
}

// ---------------------------------------------------------------------------
// Validation

void SweepConfig::validate() const {
  if (n_atoms < 2) throw ConfigError("n_atoms", "must be >= 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ConfigError("spacing", "must be positive");
  if (mode == Mode::Map && pairs.empty())
    throw ConfigError("pairs", "map mode needs at least one band pair");
  for (const auto& [name, axis] : {std::pair{"grid.alpha1", &alpha1}, std::pair{"grid.alpha2", &alpha2}}) {
    if (axis->steps < 2) throw ConfigError(name, "steps must be >= 2");
    if (!(axis->min >= 0.0 && axis->max <= kPi && axis->min <= axis->max))
      throw ConfigError(name, "range must satisfy 0 <= min <= max <= pi");
  }
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (!(secular_threshold > 0.0)) throw ConfigError("secular_threshold", "must be positive");

  if (!(drive.rabi > 0.0) || !std::isfinite(drive.rabi))
    throw ConfigError("drive.rabi", "must be positive");
  if (!std::isfinite(drive.detuning)) throw ConfigError("drive.detuning", "must be finite");
  if (drive.mixing_angle && !(*drive.mixing_angle > 0.0 && *drive.mixing_angle < kPi / 2.0))
    throw ConfigError("drive.mixing_angle", "must lie in (0, pi/2)");
  for (double g : {drive.gammas.lower, drive.gammas.central, drive.gammas.upper})
    if (!(g > 0.0) || !std::isfinite(g))
      throw ConfigError("drive.band_gammas", "every band gamma must be positive");
  if (drive.chi)
    for (double c : {drive.chi->lower, drive.chi->central, drive.chi->upper})
      if (!(std::abs(c) <= 1.0)) throw ConfigError("drive.chi", "every |chi| must be <= 1");
  make_coupling_model(drive.coupling);

  if (!(dynamics.dt > 0.0)) throw ConfigError("dynamics.dt", "must be positive");
  if (!(dynamics.t_end >= 0.0) || !std::isfinite(dynamics.t_end))
    throw ConfigError("dynamics.t_end", "must be finite and >= 0");
  if (!dynamics.initial.physical(1e-9))
    throw ConfigError("dynamics.initial", "populations implied by (x, y, z) must lie in [0, 1]");

  if (!(resolution.saturation_omega > 0.0) || !std::isfinite(resolution.saturation_omega))
    throw ConfigError("resolution.saturation_omega", "must be positive");
  if (resolution.steps < 3) throw ConfigError("resolution.steps", "must be >= 3");

  for (int n : oracle.n_range)
    if (n < 2) throw ConfigError("oracle.n_range", "every N must be >= 2");
  if (oracle.grid.steps < 1) throw ConfigError("oracle.grid", "steps must be >= 1");
  if (!(oracle.grid.min <= oracle.grid.max)) throw ConfigError("oracle.grid", "min must be <= max");
  if (!(oracle.tolerance > 0.0)) throw ConfigError("oracle.tolerance", "must be positive");
  if (oracle.memory_budget_mb < 1) throw ConfigError("oracle.memory_budget_mb", "must be >= 1");
  if (oracle.density != "uniform" && oracle.density != "two-atom-dynamics")
    throw ConfigError("oracle.density", "must be 'uniform' or 'two-atom-dynamics'");
  if (oracle.density == "two-atom-dynamics")
    for (int n : oracle.n_range)
      if (n != 2) throw ConfigError("oracle.density", "two-atom-dynamics requires N = 2");
}

// ---------------------------------------------------------------------------
// JSON

namespace {

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(where.empty() ? "config" : where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
  }
}

double number_or_angle(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_angle(v.get<std::string>());
    } catch (const ConfigError&) {
    }
  }
  throw ConfigError(field, "expected a number or angle expression");
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

std::array<double, 3> triple(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(field, "expected three numbers");
  return {number(v[0], field), number(v[1], field), number(v[2], field)};
}

AxisGrid axis_from_json(const json& v, const std::string& field) {
  if (v.is_string()) return parse_axis(v.get<std::string>());
  reject_unknown(v, field, {"min", "max", "steps"});
  AxisGrid g;
  if (v.contains("min")) g.min = number_or_angle(v["min"], field + ".min");
  if (v.contains("max")) g.max = number_or_angle(v["max"], field + ".max");
  if (v.contains("steps")) g.steps = integer(v["steps"], field + ".steps");
  return g;
}

json axis_to_json(const AxisGrid& g) {
  return {{"min", g.min}, {"max", g.max}, {"steps", g.steps}};
}

}  // namespace

SweepConfig config_from_json(const json& doc) {
  reject_unknown(doc, "", {"mode", "n_atoms", "spacing", "pairs", "grid", "output", "workers",
                           "secular_threshold", "drive", "dynamics", "resolution", "oracle"});
  SweepConfig c;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ConfigError("mode", "expected a string");
    auto m = parse_mode(doc["mode"].get<std::string>());
    if (!m) throw ConfigError("mode", "unrecognized mode '" + doc["mode"].get<std::string>() + "'");
    c.mode = *m;
  }
  if (doc.contains("n_atoms")) c.n_atoms = integer(doc["n_atoms"], "n_atoms");
  if (doc.contains("spacing")) c.spacing = number(doc["spacing"], "spacing");
  if (doc.contains("pairs")) {
    const auto& p = doc["pairs"];
    if (!p.is_array()) throw ConfigError("pairs", "expected an array of band pairs");
    for (const auto& item : p) {
      if (!item.is_string()) throw ConfigError("pairs", "expected strings like \"LL\"");
      auto pair = parse_band_pair(item.get<std::string>());
      if (!pair) throw ConfigError("pairs", "unrecognized band pair '" + item.get<std::string>() + "'");
      c.pairs.push_back(*pair);
    }
  }
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (g.is_string() || (g.is_object() && (g.contains("min") || g.contains("max") || g.contains("steps")))) {
      c.alpha1 = c.alpha2 = axis_from_json(g, "grid");
    } else {
      reject_unknown(g, "grid", {"alpha1", "alpha2"});
      if (g.contains("alpha1")) c.alpha1 = axis_from_json(g["alpha1"], "grid.alpha1");
      if (g.contains("alpha2")) c.alpha2 = axis_from_json(g["alpha2"], "grid.alpha2");
    }
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ConfigError("output.path", "expected a string");
      c.output_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      auto f = o["format"].is_string() ? parse_format(o["format"].get<std::string>()) : std::nullopt;
      if (!f) throw ConfigError("output.format", "expected \"csv\" or \"json\"");
      c.format = *f;
    }
  }
  if (doc.contains("workers")) {
    const int w = integer(doc["workers"], "workers");
    if (w < 1) throw ConfigError("workers", "must be >= 1");
    c.workers = static_cast<std::size_t>(w);
  }
  if (doc.contains("secular_threshold"))
    c.secular_threshold = number(doc["secular_threshold"], "secular_threshold");

  if (doc.contains("drive")) {
    const auto& d = doc["drive"];
    reject_unknown(d, "drive", {"rabi", "detuning", "mixing_angle", "band_gammas", "chi", "coupling"});
    if (d.contains("rabi")) c.drive.rabi = number(d["rabi"], "drive.rabi");
    if (d.contains("detuning")) c.drive.detuning = number(d["detuning"], "drive.detuning");
    if (d.contains("mixing_angle") && !d["mixing_angle"].is_null())
      c.drive.mixing_angle = number_or_angle(d["mixing_angle"], "drive.mixing_angle");
    if (d.contains("band_gammas")) {
      auto [l, m, u] = triple(d["band_gammas"], "drive.band_gammas");
      c.drive.gammas = {l, m, u};
    }
    if (d.contains("chi") && !d["chi"].is_null()) {
      auto [l, m, u] = triple(d["chi"], "drive.chi");
      c.drive.chi = ChiBands{l, m, u};
    }
    if (d.contains("coupling")) {
      if (!d["coupling"].is_string()) throw ConfigError("drive.coupling", "expected a string");
      c.drive.coupling = d["coupling"].get<std::string>();
    }
  }
  if (doc.contains("dynamics")) {
    const auto& d = doc["dynamics"];
    reject_unknown(d, "dynamics", {"t_end", "dt", "initial"});
    if (d.contains("t_end")) c.dynamics.t_end = number(d["t_end"], "dynamics.t_end");
    if (d.contains("dt")) c.dynamics.dt = number(d["dt"], "dynamics.dt");
    if (d.contains("initial")) {
      auto [x, y, z] = triple(d["initial"], "dynamics.initial");
      c.dynamics.initial = {x, y, z, 0.0};
    }
  }
  if (doc.contains("resolution")) {
    const auto& r = doc["resolution"];
    reject_unknown(r, "resolution", {"saturation_omega", "steps"});
    if (r.contains("saturation_omega"))
      c.resolution.saturation_omega = number(r["saturation_omega"], "resolution.saturation_omega");
    if (r.contains("steps")) c.resolution.steps = integer(r["steps"], "resolution.steps");
  }
  if (doc.contains("oracle")) {
    const auto& o = doc["oracle"];
    reject_unknown(o, "oracle", {"n_range", "grid", "tolerance", "memory_budget_mb", "density"});
    if (o.contains("n_range")) {
      if (!o["n_range"].is_array()) throw ConfigError("oracle.n_range", "expected an array");
      c.oracle.n_range.clear();
      for (const auto& n : o["n_range"]) c.oracle.n_range.push_back(integer(n, "oracle.n_range"));
    }
    if (o.contains("grid")) {
      const auto g = axis_from_json(o["grid"], "oracle.grid");
      c.oracle.grid = {g.min, g.max, g.steps};
    }
    if (o.contains("tolerance")) c.oracle.tolerance = number(o["tolerance"], "oracle.tolerance");
    if (o.contains("memory_budget_mb")) {
      const int mb = integer(o["memory_budget_mb"], "oracle.memory_budget_mb");
      if (mb < 1) throw ConfigError("oracle.memory_budget_mb", "must be >= 1");
      c.oracle.memory_budget_mb = static_cast<std::size_t>(mb);
    }
    if (o.contains("density")) {
      if (!o["density"].is_string()) throw ConfigError("oracle.density", "expected a string");
      c.oracle.density = o["density"].get<std::string>();
    }
  }
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

json to_json(const SweepConfig& c) {
  json pairs = json::array();
  for (const auto& p : c.pairs) pairs.push_back(to_string(p));
  json drive = {{"rabi", c.drive.rabi},
                {"detuning", c.drive.detuning},
                {"band_gammas", {c.drive.gammas.lower, c.drive.gammas.central, c.drive.gammas.upper}},
                {"coupling", c.drive.coupling}};
  if (c.drive.mixing_angle) drive["mixing_angle"] = *c.drive.mixing_angle;
  if (c.drive.chi) drive["chi"] = {c.drive.chi->lower, c.drive.chi->central, c.drive.chi->upper};
  const auto& init = c.dynamics.initial;
  return {
      {"mode", std::string(to_string(c.mode))},
      {"n_atoms", c.n_atoms},
      {"spacing", c.spacing},
      {"pairs", std::move(pairs)},
      {"grid", {{"alpha1", axis_to_json(c.alpha1)}, {"alpha2", axis_to_json(c.alpha2)}}},
      {"output", {{"path", c.output_path}, {"format", std::string(to_string(c.format))}}},
      {"workers", c.workers},
      {"secular_threshold", c.secular_threshold},
      {"drive", std::move(drive)},
      {"dynamics", {{"t_end", c.dynamics.t_end}, {"dt", c.dynamics.dt}, {"initial", {init.x, init.y, init.z}}}},
      {"resolution", {{"saturation_omega", c.resolution.saturation_omega}, {"steps", c.resolution.steps}}},
      {"oracle",
       {{"n_range", c.oracle.n_range},
        {"grid", {{"min", c.oracle.grid.min}, {"max", c.oracle.grid.max}, {"steps", c.oracle.grid.steps}}},
        {"tolerance", c.oracle.tolerance},
        {"memory_budget_mb", c.oracle.memory_budget_mb},
        {"density", c.oracle.density}}},
  };
}

json run_metadata(const SweepConfig& config) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return {{"tool", "mollowcorr"},
          {"version", MOLLOW_VERSION},
          {"timestamp", ts.str()},
          {"config", to_json(config)},
          {"warnings", json::array()}};
}

// ---------------------------------------------------------------------------
// Grid sweeps

namespace {

json validity_json(const SweepConfig& config) {
  const auto v = closed_form_validity(config.drive.params(), config.n_atoms, config.secular_threshold);
  return {{"resonant", v.resonant},
          {"secular_pass", v.secular.pass},
          {"secular_margin", v.secular.margin},
          {"secular_threshold", config.secular_threshold}};
}

void add_validity_warnings(json& meta) {
  const auto& v = meta["validity"];
  if (!v["resonant"].get<bool>())
    meta["warnings"].push_back("drive is off resonance; closed forms assume theta = pi/4");
  if (!v["secular_pass"].get<bool>())
    meta["warnings"].push_back("secular regime check failed: Omega~ < threshold * N * gamma_max");
}

struct PhaseAxes {
  std::vector<double> alpha1, alpha2, delta1, delta2;
};

PhaseAxes phase_axes(const SweepConfig& config) {
  const ChainGeometry geometry(config.n_atoms, config.spacing);
  PhaseAxes axes{config.alpha1.points(), config.alpha2.points(), {}, {}};
  for (double a : axes.alpha1) axes.delta1.push_back(detection_phase(geometry, a));
  for (double a : axes.alpha2) axes.delta2.push_back(detection_phase(geometry, a));
  return axes;
}

template <typename Kernel>
std::vector<double> fill_grid(const PhaseAxes& axes, std::size_t workers, Kernel&& kernel) {
  const std::size_t rows = axes.delta1.size(), cols = axes.delta2.size();
  std::vector<double> values(rows * cols);
  parallel_blocks(rows, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        values[i * cols + j] = kernel(axes.delta1[i], axes.delta2[j]);
  });
  for (double v : values)
    if (!std::isfinite(v)) throw Error("grid sweep produced a non-finite value");
  return values;
}

}  // namespace

GridResult run_map(const SweepConfig& config) {
  config.validate();
  const auto axes = phase_axes(config);
  GridResult result{axes.alpha1, axes.alpha2, {}, run_metadata(config)};
  for (const auto& pair : config.pairs) {
    result.quantities.push_back(
        {"g2_" + to_string(pair), fill_grid(axes, config.workers, [&](double d1, double d2) {
           return g2_chain(pair, config.n_atoms, d1, d2);
         })});
  }
  result.metadata["validity"] = validity_json(config);
  add_validity_warnings(result.metadata);
  return result;
}

GridResult run_csi(const SweepConfig& config) {
  config.validate();
  const auto axes = phase_axes(config);
  GridResult result{axes.alpha1, axes.alpha2, {}, run_metadata(config)};
  auto values = fill_grid(axes, config.workers, [&](double d1, double d2) {
    return csi(config.n_atoms, d1, d2).left;
  });
  const auto violating = std::count_if(values.begin(), values.end(), [](double v) { return v < 1.0; });
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  result.metadata["violation_fraction"] =
      static_cast<double>(violating) / static_cast<double>(values.size());
  result.metadata["min"] = *lo;
  result.metadata["max"] = *hi;
  result.metadata["note"] = "chi_L and chi_R coincide for these correlators";
  result.quantities.push_back({"chi", std::move(values)});
  result.metadata["validity"] = validity_json(config);
  add_validity_warnings(result.metadata);
  return result;
}

DynamicsRun run_dynamics(const SweepConfig& config) {
  config.validate();
  const auto params = config.drive.params();
  const ChiBands chi = config.drive.chi
                           ? *config.drive.chi
                           : chi_bands_for_spacing(config.spacing, *make_coupling_model(config.drive.coupling));
  DynamicsRun run;
  run.coefficients = coefficients(params, chi);
  run.trajectory = evolve(config.dynamics.initial, run.coefficients, config.dynamics.t_end, config.dynamics.dt);
  run.final_residual = steady_state_residual(run.trajectory.back(), run.coefficients);
  run.metadata = run_metadata(config);
  try {
    run.steady_state = steady_state(run.coefficients);
  } catch (const DegenerateParameters& e) {
    run.metadata["warnings"].push_back(e.what());
  }
  const auto& c = run.coefficients;
  run.metadata["mixing_angle"] = params.mixing_angle();
  run.metadata["chi"] = {chi.lower, chi.central, chi.upper};
  run.metadata["coefficients"] = {{"xi_plus", c.xi_plus},     {"xi_minus", c.xi_minus},
                                  {"zeta_plus", c.zeta_plus}, {"zeta_minus", c.zeta_minus},
                                  {"c0", c.c0}};
  run.metadata["final_residual"] = run.final_residual;
  if (run.steady_state) {
    const auto& s = *run.steady_state;
    run.metadata["steady_state"] = {s.x, s.y, s.z};
  } else {
    run.metadata["steady_state"] = nullptr;
  }
  const auto secular = secular_regime_check(params, 2, config.secular_threshold);
  run.metadata["secular_pass"] = secular.pass;
  run.metadata["secular_margin"] = secular.margin;
  return run;
}

OracleCheckRun run_oracle_check(const SweepConfig& config) {
  config.validate();
  std::vector<BandPair> pairs = config.pairs;
  if (pairs.empty()) {
    const auto all = all_band_pairs();
    pairs.assign(all.begin(), all.end());
  }
  oracle::SweepOptions options;
  options.workers = config.workers;
  options.tolerance = config.oracle.tolerance;
  options.memory_budget_bytes = config.oracle.memory_budget_mb * (std::size_t{1} << 20);
  OracleCheckRun run;
  run.metadata = run_metadata(config);
  if (config.oracle.density == "two-atom-dynamics") {
    const auto c = coefficients(config.drive.params(),
                                config.drive.chi ? *config.drive.chi
                                                 : chi_bands_for_spacing(config.spacing));
    options.density = oracle::density_from_two_atom_state(steady_state(c));
    run.metadata["warnings"].push_back(
        "two-atom-dynamics density is exploratory; the closed forms assume the uniform state");
  }
  run.report = oracle::oracle_sweep_report(config.oracle.n_range, config.oracle.grid, pairs, options);
  return run;
}

ResolutionRun run_resolution(const SweepConfig& config) {
  config.validate();
  const double omega = config.resolution.saturation_omega;
  ResolutionRun run;
  run.metadata = run_metadata(config);
  if (omega >= 1.0)
    run.metadata["warnings"].push_back("Omega/gamma >= 1 is outside the weak-field formula's range");
  const AxisGrid axis{-2.0 * kPi, 2.0 * kPi, config.resolution.steps};
  run.delta = axis.points();
  for (double d : run.delta) {
    run.weak.push_back(g2_weak_field(omega, d));
    run.strong.push_back(g2_strong_central_single_detector(d));
  }
  run.weak_period = weak_field_fringe_period(omega);
  run.strong_period = strong_field_fringe_period();
  run.ratio = run.weak_period / run.strong_period;
  run.metadata["weak_period"] = run.weak_period;
  run.metadata["strong_period"] = run.strong_period;
  run.metadata["period_ratio"] = run.ratio;
  return run;
}

// ---------------------------------------------------------------------------
// Writers

void write_grid_csv(std::ostream& out, const GridResult& result, std::size_t quantity) {
  const auto& values = result.quantities.at(quantity).values;
  const std::size_t cols = result.alpha2.size();
  out << "alpha1,alpha2,value\n";
  for (std::size_t i = 0; i < result.alpha1.size(); ++i) {
    const std::string a1 = format_double(result.alpha1[i]);
    for (std::size_t j = 0; j < cols; ++j)
      out << a1 << ',' << format_double(result.alpha2[j]) << ',' << format_double(values[i * cols + j])
          << '\n';
  }
}

void write_dynamics_csv(std::ostream& out, const DynamicsRun& run) {
  write_trajectory_csv(out, run.trajectory);
  out << "# steady_state_residual=" << format_double(run.final_residual) << '\n';
}

void write_resolution_csv(std::ostream& out, const ResolutionRun& run) {
  out << "delta,weak,strong\n";
  for (std::size_t i = 0; i < run.delta.size(); ++i)
    out << format_double(run.delta[i]) << ',' << format_double(run.weak[i]) << ','
        << format_double(run.strong[i]) << '\n';
}

json to_json(const GridResult& result) {
  json quantities = json::object();
  const std::size_t cols = result.alpha2.size();
  for (const auto& q : result.quantities) {
    json rows = json::array();
    for (std::size_t i = 0; i < result.alpha1.size(); ++i)
      rows.push_back(std::vector<double>(q.values.begin() + static_cast<std::ptrdiff_t>(i * cols),
                                         q.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)));
    quantities[q.name] = std::move(rows);
  }
  return {{"alpha1", result.alpha1},
          {"alpha2", result.alpha2},
          {"quantities", std::move(quantities)},
          {"metadata", result.metadata}};
}

json to_json(const DynamicsRun& run) {
  json t = json::array(), x = json::array(), y = json::array(), z = json::array();
  for (const auto& s : run.trajectory) {
    t.push_back(s.time);
    x.push_back(s.x);
    y.push_back(s.y);
    z.push_back(s.z);
  }
  return {{"t", t}, {"x", x}, {"y", y}, {"z", z}, {"metadata", run.metadata}};
}

json to_json(const ResolutionRun& run) {
  return {{"delta", run.delta},
          {"weak", run.weak},
          {"strong", run.strong},
          {"metadata", run.metadata}};
}

}  // namespace mollow
