#pragma once

// Zero-delay second-order correlators of the three Mollow bands for a
// strongly and resonantly driven regular chain, the Cauchy-Schwarz
// parameters built from them, and the single two-photon-detector fringe
// comparison against the weak-field pattern.
//
// Every function takes detection phases directly; use detection_phase()
// to convert detector angles.

#include <optional>

#include "mollow/params.hpp"

namespace mollow {

/// Array factor sin^2(N d/2) / sin^2(d/2), with the removable singularity
/// at d = 2 pi m returning exactly N^2.
double phi(int n_atoms, double delta);

/// Two-atom correlator g2_mn(delta1, delta2).
double g2_two_atom(BandPair pair, double delta1, double delta2);

/// N-atom chain correlator; reduces to g2_two_atom at N = 2.
/// Throws InvalidParameter for n_atoms < 2.
double g2_chain(BandPair pair, int n_atoms, double delta1, double delta2);

struct CauchySchwarz {
  double left;
  double right;
  bool violated() const noexcept { return left < 1.0 || right < 1.0; }
};

/// chi_L = g_LL g_RR / g_LR^2 and chi_R = g_LL g_RR / g_RL^2 for the chain.
CauchySchwarz csi(int n_atoms, double delta1, double delta2);

/// Two-atom weak-field single-detector pattern [s/(s + cos d)]^2 with
/// s = 1 + 2 (Omega/gamma)^2. Throws InvalidParameter unless
/// saturation_omega > 0, PoleError when s + cos d vanishes.
double g2_weak_field(double saturation_omega, double delta);

/// Strong-field central-band single-detector pattern 1 + cos^2 d.
double g2_strong_central_single_detector(double delta);

/// Ratio of the weak-field to strong-field fringe periods in delta, each
/// measured as the spacing of consecutive numerically located maxima.
double fringe_period_ratio(double saturation_omega);

/// Fringe period of the weak-field pattern alone.
double weak_field_fringe_period(double saturation_omega);
/// Fringe period of 1 + cos^2 d alone.
double strong_field_fringe_period();

struct CorrelationResult {
  BandPair band_pair;
  double delta1;
  double delta2;
  double value;
  std::optional<CauchySchwarz> csi;
};

/// g2_chain plus, when requested, the Cauchy-Schwarz pair at the same phases.
CorrelationResult correlate(BandPair pair, int n_atoms, double delta1,
                            double delta2, bool with_csi = false);

/// Preconditions of the closed forms, reported rather than enforced.
struct Validity {
  bool resonant;
  SecularCheck secular;
  bool ok() const noexcept { return resonant && secular.pass; }
};

Validity closed_form_validity(const DressedParams& params, int n_atoms,
                              double secular_threshold = kDefaultSecularThreshold);

}  // namespace mollow
