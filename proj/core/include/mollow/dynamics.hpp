#pragma once

// Two-atom collective dressed-state populations in the strong-field
// secular limit: a 3x3 constant-coefficient linear system for
//   x = 2(s_ee - s_gg),  y = s_ss - s_aa,  z = s_ee + s_gg - s_ss - s_aa.

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mollow/params.hpp"

namespace mollow {

struct Populations {
  double ee, gg, ss, aa;
};

struct TwoAtomState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double time = 0.0;

  Eigen::Vector3d vector() const { return {x, y, z}; }
  static TwoAtomState from_vector(const Eigen::Vector3d& v, double t = 0.0) {
    return {v[0], v[1], v[2], t};
  }

  /// Collective populations implied by (x, y, z) and unit trace.
  Populations populations() const noexcept;
  /// Every population lies in [-tol, 1 + tol].
  bool physical(double tol = 1e-12) const noexcept;

  friend bool operator==(const TwoAtomState&, const TwoAtomState&) = default;
};

/// Both atoms in the lower dressed state |1~>: x = -2, y = 0, z = 1.
inline constexpr TwoAtomState kGroundDressedState{-2.0, 0.0, 1.0, 0.0};

/// chi_ab at the three band frequencies.
struct ChiBands {
  double lower = 0.0;
  double central = 0.0;
  double upper = 0.0;

  friend bool operator==(const ChiBands&, const ChiBands&) = default;
};

/// Same chi at all bands, from the coupling model at x = k_L r0.
ChiBands chi_bands_for_spacing(double spacing,
                               const CouplingModel& model = PerpendicularDipoleCoupling{});

struct DynamicsCoefficients {
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double zeta_plus = 0.0;
  double zeta_minus = 0.0;
  double c0 = 0.0;

  double max_abs() const noexcept;
};

/// Rates of the population equations. Throws InvalidParameter if |chi| > 1.
DynamicsCoefficients coefficients(const DressedParams& params, const ChiBands& chi);

/// d/dt (x, y, z) = A (x, y, z) + b.
Eigen::Matrix3d system_matrix(const DynamicsCoefficients& c);
Eigen::Vector3d inhomogeneity(const DynamicsCoefficients& c);

Eigen::Vector3d derivative(const TwoAtomState& s, const DynamicsCoefficients& c);

/// Euclidean norm of the time derivative at s.
double steady_state_residual(const TwoAtomState& s, const DynamicsCoefficients& c);

/// Largest step accepted by evolve().
double max_stable_step(const DynamicsCoefficients& c);

/// Classical RK4 with fixed step dt from initial.time to initial.time + t_end.
/// The last step is shortened to land on the end time exactly. The returned
/// trajectory includes the initial point.
/// Throws StepSizeError when dt exceeds max_stable_step().
std::vector<TwoAtomState> evolve(const TwoAtomState& initial,
                                 const DynamicsCoefficients& c, double t_end,
                                 double dt);

/// Fixed point of the population equations by partial-pivot LU.
/// Throws DegenerateParameters when the system matrix is singular.
TwoAtomState steady_state(const DynamicsCoefficients& c);

/// Header t,x,y,z followed by one round-trip formatted row per point.
void write_trajectory_csv(std::ostream& out, std::span<const TwoAtomState> trajectory);

}  // namespace mollow
