#pragma once

// Exact operator-algebra evaluation of the band correlators on the 2^N
// dimensional tensor-product dressed basis. Basis index bit j encodes atom
// j: 0 -> |2~>, 1 -> |1~>. This path shares nothing with the closed forms in
// correlations.hpp beyond the BandPair type, so the two can check each other.

#include <complex>
#include <optional>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "mollow/dynamics.hpp"
#include "mollow/params.hpp"

namespace mollow::oracle {

inline constexpr int kMaxAtoms = 12;

/// Throws CapacityError for n_atoms > kMaxAtoms, InvalidParameter below 1.
void check_capacity(int n_atoms);

/// Single-atom operators in the basis {|2~>, |1~>}.
Eigen::Matrix2cd inversion();  // R_z = |2~><2~| - |1~><1~|
Eigen::Matrix2cd raising();    // R_21 = |2~><1~|
Eigen::Matrix2cd lowering();   // R_12 = |1~><2~|

/// op acting on atom `atom` of an n_atoms register, identity elsewhere.
Eigen::MatrixXcd embed(const Eigen::Matrix2cd& op, int atom, int n_atoms);

struct BandOperator {
  Eigen::MatrixXcd matrix;
  Band band;
  double detector_phase;
  int n_atoms;
};

/// A_m(d) = sum_j S_m^(j) e^{i j d} with S_C = R_z sin(2t)/2,
/// S_R = R_21 cos^2 t, S_L = R_12 sin^2 t; t defaults to resonance.
BandOperator build_band_operator(int n_atoms, Band band, double delta,
                                 double mixing_angle = kPi / 4.0);

enum class DensityKind { ResonantUniform, TwoAtomDynamics };

struct SteadyDensity {
  Eigen::MatrixXcd matrix;
  DensityKind kind;
};

/// Identity / 2^N: equally populated, uncorrelated dressed states.
SteadyDensity uniform_density(int n_atoms);

/// Two-atom density diagonal in the collective basis {e, s, a, g} with the
/// populations implied by a dynamics state. Exploratory only: the closed
/// forms are derived for the uniform state.
SteadyDensity density_from_two_atom_state(const TwoAtomState& state);

/// Operator order inside the expectation value.
enum class Ordering {
  Normal,            // A_m+ A_n+ A_n A_m
  AntiNormal,        // A_m A_n A_n+ A_m+
  IntensityProduct,  // A_m+ A_m A_n+ A_n
};

struct Evaluation {
  std::complex<double> numerator;
  double first_order_m;
  double first_order_n;
  double value;
};

/// Tr[rho X] for a dense density and operator.
std::complex<double> expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op);

/// First-order intensity Tr[rho A+ A] (Tr[rho A A+] for anti-normal order).
double first_order(const Eigen::MatrixXcd& rho, const BandOperator& a,
                   Ordering ordering = Ordering::Normal);

/// Normalized second-order correlator of two band operators.
/// Throws NormalizationError on a vanishing first-order intensity and
/// Error when the numerator has an imaginary part above 1e-12.
Evaluation evaluate(const SteadyDensity& rho, const BandOperator& a_m,
                    const BandOperator& a_n, Ordering ordering = Ordering::Normal);

/// g2_mn(delta1, delta2) in the resonant uniform steady state.
double oracle_g2(int n_atoms, BandPair pair, double delta1, double delta2);

struct DeltaGrid {
  double min = -2.0 * kPi;
  double max = 2.0 * kPi;
  int steps = 21;

  double at(int i) const noexcept;
  friend bool operator==(const DeltaGrid&, const DeltaGrid&) = default;
};

struct ReportEntry {
  int n_atoms;
  BandPair pair;
  double max_deviation;
  double worst_delta1;
  double worst_delta2;
};

struct SweepReport {
  DeltaGrid grid;
  double tolerance;
  std::vector<ReportEntry> entries;
  bool pass;
  DensityKind density = DensityKind::ResonantUniform;
};

inline constexpr double kDefaultTolerance = 1e-10;

struct SweepOptions {
  std::size_t workers = 1;
  double tolerance = kDefaultTolerance;
  /// Concurrent workers are capped so operator storage stays below this.
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
  /// Replaces the uniform state; only valid when every N matches its size.
  std::optional<SteadyDensity> density;
};

/// Worst |oracle - closed form| per (N, pair) over a steps x steps phase grid.
SweepReport oracle_sweep_report(std::span<const int> n_range, const DeltaGrid& grid,
                                std::span<const BandPair> pairs,
                                const SweepOptions& options = {});

/// All nine pairs.
SweepReport oracle_sweep_report(std::span<const int> n_range, const DeltaGrid& grid,
                                std::size_t workers = 1);

/// Bytes of dense operator storage one worker holds at a given N.
std::size_t worker_memory_bytes(int n_atoms);

nlohmann::json to_json(const SweepReport& report);

}  // namespace mollow::oracle
