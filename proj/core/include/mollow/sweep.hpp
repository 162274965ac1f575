#pragma once

// Run configuration and the grid sweeps behind the command-line tool.
//
// A run is described by one JSON document (see configs/ for the figure
// recipes). Command-line flags override individual fields afterwards.
// Every sweep evaluates pure per-cell kernels, splits grid rows into
// static blocks across `workers` threads and assembles results in fixed
// row-major order, so output bytes do not depend on the worker count.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mollow/dynamics.hpp"
#include "mollow/oracle.hpp"
#include "mollow/params.hpp"

namespace mollow {

enum class Mode { Map, Csi, Dynamics, OracleCheck, Resolution };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;
std::string_view to_string(OutputFormat format) noexcept;
std::optional<OutputFormat> parse_format(std::string_view text) noexcept;

/// Closed interval [min, max] sampled at `steps` points, endpoints included.
struct AxisGrid {
  double min = 0.0;
  double max = kPi;
  int steps = 101;

  double at(int i) const noexcept;
  std::vector<double> points() const;
  friend bool operator==(const AxisGrid&, const AxisGrid&) = default;
};

/// Parses an angle such as "1.2", "pi", "pi/2", "2pi/3", "-3*pi/4".
double parse_angle(std::string_view text);
/// Parses "min:max:steps" with angles as in parse_angle.
AxisGrid parse_axis(std::string_view text);

struct DriveConfig {
  double rabi = 100.0;
  double detuning = 0.0;
  /// When set, overrides detuning via cot(2 theta) = detuning / (2 rabi).
  std::optional<double> mixing_angle;
  BandGammas gammas{};
  /// When unset, chi at every band comes from `coupling` at k r0.
  std::optional<ChiBands> chi;
  std::string coupling = "free-space-perpendicular";

  DressedParams params() const;
  friend bool operator==(const DriveConfig&, const DriveConfig&) = default;
};

struct DynamicsConfig {
  double t_end = 50.0;
  double dt = 0.01;
  TwoAtomState initial = kGroundDressedState;
  friend bool operator==(const DynamicsConfig&, const DynamicsConfig&) = default;
};

struct ResolutionConfig {
  double saturation_omega = 0.5;
  int steps = 801;
  friend bool operator==(const ResolutionConfig&, const ResolutionConfig&) = default;
};

struct OracleConfig {
  std::vector<int> n_range{2, 3, 4, 5, 6};
  oracle::DeltaGrid grid{};
  double tolerance = oracle::kDefaultTolerance;
  std::size_t memory_budget_mb = 1024;
  /// "uniform" (closed-form state) or "two-atom-dynamics" (exploratory,
  /// N = 2 only, steady state of the drive section).
  std::string density = "uniform";
  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct SweepConfig {
  Mode mode = Mode::Map;
  int n_atoms = 2;
  double spacing = 5.0;  // r0 / lambda
  /// Required for map mode; empty means all nine pairs in oracle-check mode.
  std::vector<BandPair> pairs;
  AxisGrid alpha1{};
  AxisGrid alpha2{};
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
  std::size_t workers = 1;
  double secular_threshold = kDefaultSecularThreshold;
  DriveConfig drive{};
  DynamicsConfig dynamics{};
  ResolutionConfig resolution{};
  OracleConfig oracle{};

  /// Throws ConfigError naming the offending field.
  void validate() const;
  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Missing keys keep their defaults; unknown keys are rejected.
SweepConfig config_from_json(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& config);

struct GridQuantity {
  std::string name;
  std::vector<double> values;  // row-major, rows follow alpha1
};

struct GridResult {
  std::vector<double> alpha1;
  std::vector<double> alpha2;
  std::vector<GridQuantity> quantities;
  nlohmann::json metadata;

  double value(std::size_t quantity, std::size_t i, std::size_t j) const {
    return quantities.at(quantity).values.at(i * alpha2.size() + j);
  }
};

/// Coupling model by config name; throws ConfigError for unknown names.
std::unique_ptr<CouplingModel> make_coupling_model(const std::string& name);

/// Common metadata block: tool, version, UTC timestamp and config echo.
nlohmann::json run_metadata(const SweepConfig& config);

/// g2 of every configured band pair over the (alpha1, alpha2) grid.
GridResult run_map(const SweepConfig& config);

/// chi_L (= chi_R) over the grid; metadata carries the violation fraction.
GridResult run_csi(const SweepConfig& config);

struct DynamicsRun {
  DynamicsCoefficients coefficients;
  std::vector<TwoAtomState> trajectory;
  std::optional<TwoAtomState> steady_state;  // unset when degenerate
  double final_residual;  // |(x', y', z')| at the last point
  nlohmann::json metadata;
};

DynamicsRun run_dynamics(const SweepConfig& config);

struct OracleCheckRun {
  oracle::SweepReport report;
  nlohmann::json metadata;
};

OracleCheckRun run_oracle_check(const SweepConfig& config);

struct ResolutionRun {
  std::vector<double> delta;
  std::vector<double> weak;
  std::vector<double> strong;
  double weak_period;
  double strong_period;
  double ratio;
  nlohmann::json metadata;
};

/// Both single-detector profiles over delta in [-2 pi, 2 pi] and the
/// ratio of their fringe periods.
ResolutionRun run_resolution(const SweepConfig& config);

// Writers. CSV text is formatted with shortest round-trip decimals.
void write_grid_csv(std::ostream& out, const GridResult& result, std::size_t quantity);
void write_dynamics_csv(std::ostream& out, const DynamicsRun& run);
void write_resolution_csv(std::ostream& out, const ResolutionRun& run);

nlohmann::json to_json(const GridResult& result);
nlohmann::json to_json(const DynamicsRun& run);
nlohmann::json to_json(const ResolutionRun& run);

}  // namespace mollow
