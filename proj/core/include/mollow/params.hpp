#pragma once

// Dressed-state drive parameters, chain geometry and the collective
// coupling kernel. Units: the reference spontaneous rate gamma is 1, all
// frequencies and rates are multiples of it, lengths are in wavelengths.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace mollow {

inline constexpr double kPi = 3.14159265358979323846;

/// One of the three Mollow spectral bands.
enum class Band { C, L, R };

inline constexpr std::array<Band, 3> kAllBands{Band::C, Band::L, Band::R};

char to_char(Band band) noexcept;
std::optional<Band> band_from_char(char c) noexcept;

/// Ordered band pair (m, n) indexing a second-order correlator.
struct BandPair {
  Band first;
  Band second;

  friend bool operator==(const BandPair&, const BandPair&) = default;
};

/// All nine ordered band pairs in C, L, R row-major order.
std::array<BandPair, 9> all_band_pairs() noexcept;

std::string to_string(BandPair pair);
/// Parses "LL", "cr", ...; nullopt for anything else.
std::optional<BandPair> parse_band_pair(std::string_view text) noexcept;

/// Reservoir strength at the three band frequencies.
struct BandGammas {
  double lower = 1.0;    // gamma(omega_L - 2 Omega~)
  double central = 1.0;  // gamma(omega_L)
  double upper = 1.0;    // gamma(omega_L + 2 Omega~)

  double max() const noexcept;
  friend bool operator==(const BandGammas&, const BandGammas&) = default;
};

/// Mixing angle from cot(2 theta) = detuning / (2 rabi); requires rabi > 0.
double mixing_angle(double rabi, double detuning);

/// sqrt(rabi^2 + (detuning/2)^2); requires rabi >= 0.
double generalized_rabi(double rabi, double detuning);

/// Immutable set of driving and reservoir parameters in the dressed picture.
class DressedParams {
 public:
  /// Throws InvalidParameter on rabi <= 0 or a non-positive band gamma.
  static DressedParams make(double rabi, double detuning,
                            BandGammas gammas = {}, double laser_freq = 0.0);

  double rabi() const noexcept { return rabi_; }
  double detuning() const noexcept { return detuning_; }
  double mixing_angle() const noexcept { return theta_; }
  double gen_rabi() const noexcept { return gen_rabi_; }
  double laser_freq() const noexcept { return laser_freq_; }
  const BandGammas& band_gammas() const noexcept { return gammas_; }

  /// sin^2(theta) and cos^2(theta) from cos(2 theta) = detuning / (2 Omega~),
  /// exactly 1/2 each on resonance.
  double sin_sq() const noexcept { return 0.5 * (1.0 - cos_2theta_); }
  double cos_sq() const noexcept { return 0.5 * (1.0 + cos_2theta_); }

  /// Center frequency of a band: omega_L, omega_L -/+ 2 Omega~.
  double band_frequency(Band band) const noexcept;

  /// theta == pi/4 to 1e-12, the regime the closed-form correlators assume.
  bool resonant() const noexcept;

 private:
  DressedParams() = default;

  double rabi_ = 0.0;
  double detuning_ = 0.0;
  double theta_ = 0.0;
  double gen_rabi_ = 0.0;
  double cos_2theta_ = 0.0;
  double laser_freq_ = 0.0;
  BandGammas gammas_{};
};

/// Regular linear chain observed by far-zone detectors in its plane.
class ChainGeometry {
 public:
  /// Throws InvalidParameter unless n_atoms >= 2 and spacing > 0.
  ChainGeometry(int n_atoms, double spacing);

  int n_atoms() const noexcept { return n_atoms_; }
  /// Nearest-neighbour spacing in units of the laser wavelength.
  double spacing() const noexcept { return spacing_; }
  /// k = 2 pi / lambda with lambda = 1.
  double wavenumber() const noexcept { return 2.0 * kPi; }

 private:
  int n_atoms_;
  double spacing_;
};

/// Adjacent-atom phase k r0 cos(alpha) toward a detector at angle alpha.
/// Atom j of the chain carries phase j * delta.
double detection_phase(const ChainGeometry& geometry, double alpha);

/// Real and imaginary parts of the normalized collective decay
/// gamma_jl / gamma = chi + i Omega_dd.
struct CollectiveCoupling {
  double chi;
  double omega_dd;
};

/// Pluggable pair-coupling model evaluated at x = k r.
class CouplingModel {
 public:
  virtual ~CouplingModel() = default;
  virtual CollectiveCoupling evaluate(double x) const = 0;
  virtual std::string name() const = 0;
};

/// Free-space kernel for identical dipoles perpendicular to the separation.
class PerpendicularDipoleCoupling final : public CouplingModel {
 public:
  CollectiveCoupling evaluate(double x) const override;
  std::string name() const override { return "free-space-perpendicular"; }
};

/// Free-space kernel for dipoles parallel to the separation.
class ParallelDipoleCoupling final : public CouplingModel {
 public:
  CollectiveCoupling evaluate(double x) const override;
  std::string name() const override { return "free-space-parallel"; }
};

/// Fixed values, e.g. tabulated for an engineered reservoir.
class ConstantCoupling final : public CouplingModel {
 public:
  explicit ConstantCoupling(CollectiveCoupling value);
  CollectiveCoupling evaluate(double x) const override;
  std::string name() const override { return "constant"; }

 private:
  CollectiveCoupling value_;
};

/// Perpendicular-dipole free-space coupling; x must be positive.
CollectiveCoupling collective_coupling(double x);

struct SecularCheck {
  bool pass;
  double margin;  // Omega~ / (N gamma_max)
};

inline constexpr double kDefaultSecularThreshold = 10.0;

/// Advisory check of the well-separated-band regime Omega~ >> N gamma.
SecularCheck secular_regime_check(const DressedParams& params, int n_atoms,
                                  double threshold = kDefaultSecularThreshold);

}  // namespace mollow
