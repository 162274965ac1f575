#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mollow/error.hpp"
#include "mollow/format.hpp"
#include "mollow/sweep.hpp"

namespace mollow::cli {
namespace {

using nlohmann::json;

// Flags shared by every subcommand; unset optionals leave the config alone.
struct Overrides {
  std::string config_path;
  std::optional<int> n_atoms;
  std::optional<double> spacing;
  std::vector<std::string> pairs;
  std::optional<std::string> grid, alpha1, alpha2;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> seed;
  // drive / dynamics
  std::optional<double> rabi, detuning, t_end, dt;
  std::optional<std::string> mixing_angle, initial, chi;
  // resolution
  std::optional<double> omega;
  std::optional<int> profile_steps;
  // oracle
  std::optional<std::string> n_range, delta_grid, density;
  std::optional<double> tolerance;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_option("--n-atoms", o.n_atoms, "Number of atoms N");
  cmd->add_option("--spacing", o.spacing, "Nearest-neighbour spacing r0 in wavelengths");
  cmd->add_option("--pair", o.pairs, "Band pair such as LL, LR, CC (repeatable)");
  cmd->add_option("--grid", o.grid, "Detector-angle grid min:max:steps for both axes");
  cmd->add_option("--alpha1", o.alpha1, "Grid for detector 1 (min:max:steps)");
  cmd->add_option("--alpha2", o.alpha2, "Grid for detector 2 (min:max:steps)");
  cmd->add_option("--workers", o.workers, "Worker threads");
  cmd->add_option("--out", o.out, "Output path (default: standard output)");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--seed", o.seed, "Accepted for scripting; only 'none' (runs are deterministic)");
  cmd->add_option("--rabi", o.rabi, "Rabi frequency Omega in units of gamma");
  cmd->add_option("--detuning", o.detuning, "Detuning Delta in units of gamma");
  cmd->add_option("--mixing-angle", o.mixing_angle, "Mixing angle theta (overrides detuning)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& field) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError(field, "expected three comma-separated numbers");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) v[i] = parse_angle(parts[i]);
  return v;
}

std::vector<int> parse_n_range(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  auto to_int = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("oracle.n_range", "cannot parse '" + s + "'");
    }
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = to_int(text.substr(0, colon)), hi = to_int(text.substr(colon + 1));
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(to_int(part));
  return out;
}

SweepConfig build_config(Mode mode, const Overrides& o) {
  SweepConfig c = o.config_path.empty() ? SweepConfig{} : load_config(o.config_path);
  c.mode = mode;
  if (o.n_atoms) c.n_atoms = *o.n_atoms;
  if (o.spacing) c.spacing = *o.spacing;
  if (!o.pairs.empty()) {
    c.pairs.clear();
    for (const auto& p : o.pairs) {
      auto pair = parse_band_pair(p);
      if (!pair) throw ConfigError("pairs", "unrecognized band pair '" + p + "'");
      c.pairs.push_back(*pair);
    }
  }
  if (o.grid) c.alpha1 = c.alpha2 = parse_axis(*o.grid);
  if (o.alpha1) c.alpha1 = parse_axis(*o.alpha1);
  if (o.alpha2) c.alpha2 = parse_axis(*o.alpha2);
  if (o.workers) {
    if (*o.workers < 1) throw ConfigError("workers", "must be >= 1");
    c.workers = static_cast<std::size_t>(*o.workers);
  }
  if (o.out) c.output_path = *o.out;
  if (o.format) {
    auto f = parse_format(*o.format);
    if (!f) throw ConfigError("output.format", "expected csv or json");
    c.format = *f;
  }
  if (o.seed && *o.seed != "none")
    throw ConfigError("seed", "runs are deterministic; only --seed none is accepted");
  if (o.rabi) c.drive.rabi = *o.rabi;
  if (o.detuning) {
    c.drive.detuning = *o.detuning;
    c.drive.mixing_angle.reset();
  }
  if (o.mixing_angle) c.drive.mixing_angle = parse_angle(*o.mixing_angle);
  if (o.chi) {
    auto [l, m, u] = parse_triple(*o.chi, "drive.chi");
    c.drive.chi = ChiBands{l, m, u};
  }
  if (o.t_end) c.dynamics.t_end = *o.t_end;
  if (o.dt) c.dynamics.dt = *o.dt;
  if (o.initial) {
    auto [x, y, z] = parse_triple(*o.initial, "dynamics.initial");
    c.dynamics.initial = {x, y, z, 0.0};
  }
  if (o.omega) c.resolution.saturation_omega = *o.omega;
  if (o.profile_steps) c.resolution.steps = *o.profile_steps;
  if (o.n_range) c.oracle.n_range = parse_n_range(*o.n_range);
  else if (o.n_atoms && mode == Mode::OracleCheck) c.oracle.n_range = {*o.n_atoms};
  if (o.delta_grid) {
    const auto g = parse_axis(*o.delta_grid);
    c.oracle.grid = {g.min, g.max, g.steps};
  }
  if (o.tolerance) c.oracle.tolerance = *o.tolerance;
  if (o.density) c.oracle.density = *o.density;
  return c;
}

// Writes text to `path`, or to `out` when path is empty.
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("output.path", "cannot open '" + path + "' for writing");
  writer(file);
}

void write_sidecar(const std::string& path, const json& metadata) {
  if (path.empty()) return;
  emit(path + ".meta.json", std::cout, [&](std::ostream& s) { s << metadata.dump(2) << '\n'; });
}

std::string quantity_path(const std::string& base, const std::string& name) {
  const std::filesystem::path p(base);
  auto stem = p.stem().string() + "_" + name + p.extension().string();
  return (p.parent_path() / stem).string();
}

void report_warnings(const json& metadata, std::ostream& err) {
  if (!metadata.contains("warnings")) return;
  for (const auto& w : metadata["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
}

void write_grid(const SweepConfig& c, const GridResult& result, std::ostream& out) {
  if (c.format == OutputFormat::Json) {
    emit(c.output_path, out, [&](std::ostream& s) { s << to_json(result).dump() << '\n'; });
    return;
  }
  if (result.quantities.size() == 1) {
    emit(c.output_path, out, [&](std::ostream& s) { write_grid_csv(s, result, 0); });
  } else {
    if (c.output_path.empty())
      throw ConfigError("output.path", "several quantities need --out (one CSV each) or --format json");
    for (std::size_t q = 0; q < result.quantities.size(); ++q) {
      emit(quantity_path(c.output_path, result.quantities[q].name), out,
           [&](std::ostream& s) { write_grid_csv(s, result, q); });
    }
  }
  write_sidecar(c.output_path, result.metadata);
}

int execute(Mode mode, const Overrides& o, std::ostream& out, std::ostream& err) {
  const SweepConfig c = build_config(mode, o);
  switch (mode) {
    case Mode::Map: {
      const auto result = run_map(c);
      report_warnings(result.metadata, err);
      write_grid(c, result, out);
      return kExitOk;
    }
    case Mode::Csi: {
      const auto result = run_csi(c);
      report_warnings(result.metadata, err);
      write_grid(c, result, out);
      err << "violation fraction " << format_double(result.metadata["violation_fraction"].get<double>())
          << '\n';
      return kExitOk;
    }
    case Mode::Dynamics: {
      const auto run = run_dynamics(c);
      report_warnings(run.metadata, err);
      if (c.format == OutputFormat::Json) {
        emit(c.output_path, out, [&](std::ostream& s) { s << to_json(run).dump() << '\n'; });
      } else {
        emit(c.output_path, out, [&](std::ostream& s) { write_dynamics_csv(s, run); });
        write_sidecar(c.output_path, run.metadata);
      }
      err << "steady-state residual " << format_double(run.final_residual) << '\n';
      return kExitOk;
    }
    case Mode::Resolution: {
      const auto run = run_resolution(c);
      report_warnings(run.metadata, err);
      if (c.format == OutputFormat::Json) {
        emit(c.output_path, out, [&](std::ostream& s) { s << to_json(run).dump() << '\n'; });
      } else {
        emit(c.output_path, out, [&](std::ostream& s) { write_resolution_csv(s, run); });
        write_sidecar(c.output_path, run.metadata);
      }
      err << "fringe period ratio " << format_double(run.ratio) << '\n';
      return kExitOk;
    }
    case Mode::OracleCheck: {
      const auto run = run_oracle_check(c);
      report_warnings(run.metadata, err);
      json doc = oracle::to_json(run.report);
      doc["metadata"] = run.metadata;
      emit(c.output_path, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
      if (!run.report.pass) {
        err << "oracle deviation above tolerance " << format_double(run.report.tolerance) << '\n';
        return kExitDeviation;
      }
      return kExitOk;
    }
  }
  return kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Band-resolved photon correlations of strongly driven atom chains", "mollowcorr"};
  app.require_subcommand(1);

  Overrides o;
  struct Sub {
    Mode mode;
    const char* help;
  };
  const Sub subs[] = {
      {Mode::Map, "g2 maps over detector angles"},
      {Mode::Csi, "Cauchy-Schwarz parameter map and violation fraction"},
      {Mode::Dynamics, "Two-atom dressed population dynamics"},
      {Mode::OracleCheck, "Verify closed forms against the exact operator oracle"},
      {Mode::Resolution, "Weak- vs strong-field two-photon fringe comparison"},
  };
  std::vector<std::pair<CLI::App*, Mode>> commands;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(std::string(to_string(s.mode)), s.help);
    add_common(cmd, o);
    commands.emplace_back(cmd, s.mode);
    switch (s.mode) {
      case Mode::Dynamics:
        cmd->add_option("--t-end", o.t_end, "Integration time in 1/gamma");
        cmd->add_option("--dt", o.dt, "RK4 step");
        cmd->add_option("--initial", o.initial, "Initial x,y,z (default -2,0,1)");
        cmd->add_option("--chi", o.chi, "chi_ab at the lower,central,upper bands");
        break;
      case Mode::Resolution:
        cmd->add_option("--omega", o.omega, "Weak-field Omega/gamma");
        cmd->add_option("--steps", o.profile_steps, "Profile samples over [-2pi, 2pi]");
        break;
      case Mode::OracleCheck:
        cmd->add_option("--n-range", o.n_range, "Atom counts, e.g. 2:6 or 2,4,6");
        cmd->add_option("--delta-grid", o.delta_grid, "Phase grid min:max:steps");
        cmd->add_option("--tolerance", o.tolerance, "Maximum allowed deviation");
        cmd->add_option("--density", o.density, "uniform or two-atom-dynamics");
        cmd->add_option("--chi", o.chi, "chi_ab at the lower,central,upper bands");
        break;
      default:
        break;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Mode mode = Mode::Map;
  for (const auto& [cmd, m] : commands)
    if (cmd->parsed()) mode = m;

  try {
    return execute(mode, o, out, err);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const StepSizeError& e) {
    err << "error: " << e.what() << "\nhint: pass --dt " << format_double(e.dt_max())
        << " or smaller\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace mollow::cli
