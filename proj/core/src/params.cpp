#include "mollow/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mollow/error.hpp"

namespace mollow {

char to_char(Band band) noexcept {
  switch (band) {
    case Band::C: return 'C';
    case Band::L: return 'L';
    case Band::R: return 'R';
  }
  return '?';
}

std::optional<Band> band_from_char(char c) noexcept {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'C': return Band::C;
    case 'L': return Band::L;
    case 'R': return Band::R;
    default: return std::nullopt;
  }
}

std::array<BandPair, 9> all_band_pairs() noexcept {
  std::array<BandPair, 9> pairs{};
  std::size_t i = 0;
  for (Band m : kAllBands)
    for (Band n : kAllBands) pairs[i++] = {m, n};
  return pairs;
}

std::string to_string(BandPair pair) {
  return {to_char(pair.first), to_char(pair.second)};
}

std::optional<BandPair> parse_band_pair(std::string_view text) noexcept {
  if (text.size() != 2) return std::nullopt;
  auto m = band_from_char(text[0]);
  auto n = band_from_char(text[1]);
  if (!m || !n) return std::nullopt;
  return BandPair{*m, *n};
}

double BandGammas::max() const noexcept {
  return std::max({lower, central, upper});
}

double mixing_angle(double rabi, double detuning) {
  if (!(rabi > 0.0) || !std::isfinite(rabi) || !std::isfinite(detuning))
    throw InvalidParameter("mixing_angle: Rabi frequency must be positive "
                           "and finite (dressed picture undefined without drive)");
  // atan2 keeps 2 theta in (0, pi) for every sign of the detuning.
  return 0.5 * std::atan2(2.0 * rabi, detuning);
}

double generalized_rabi(double rabi, double detuning) {
  if (!(rabi >= 0.0) || !std::isfinite(rabi) || !std::isfinite(detuning))
    throw InvalidParameter("generalized_rabi: Rabi frequency must be >= 0");
  return std::hypot(rabi, 0.5 * detuning);
}

DressedParams DressedParams::make(double rabi, double detuning,
                                  BandGammas gammas, double laser_freq) {
  for (double g : {gammas.lower, gammas.central, gammas.upper})
    if (!(g > 0.0) || !std::isfinite(g))
      throw InvalidParameter("band gammas must be positive and finite");
  DressedParams p;
  p.rabi_ = rabi;
  p.detuning_ = detuning;
  p.theta_ = mollow::mixing_angle(rabi, detuning);
  p.gen_rabi_ = generalized_rabi(rabi, detuning);
  p.cos_2theta_ = 0.5 * detuning / p.gen_rabi_;
  p.laser_freq_ = laser_freq;
  p.gammas_ = gammas;
  return p;
}

double DressedParams::band_frequency(Band band) const noexcept {
  switch (band) {
    case Band::L: return laser_freq_ - 2.0 * gen_rabi_;
    case Band::R: return laser_freq_ + 2.0 * gen_rabi_;
    case Band::C: break;
  }
  return laser_freq_;
}

bool DressedParams::resonant() const noexcept {
  return std::abs(theta_ - kPi / 4.0) < 1e-12;
}

ChainGeometry::ChainGeometry(int n_atoms, double spacing)
    : n_atoms_(n_atoms), spacing_(spacing) {
  if (n_atoms < 2) throw InvalidParameter("chain needs at least two atoms");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw InvalidParameter("chain spacing must be positive");
}

double detection_phase(const ChainGeometry& geometry, double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi))
    throw InvalidParameter("detector angle must lie in [0, pi]");
  return geometry.wavenumber() * geometry.spacing() * std::cos(alpha);
}

namespace {

void require_positive_distance(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidParameter(
        "collective coupling needs a positive emitter separation k r");
}

}  // namespace

// chi = 3/2 [j0(x) - j1(x)/x], Omega = 3/4 [-cos x/x + sin x/x^2 + cos x/x^3]
CollectiveCoupling PerpendicularDipoleCoupling::evaluate(double x) const {
  require_positive_distance(x);
  const double s = std::sin(x), c = std::cos(x);
  const double x2 = x * x, x3 = x2 * x;
  double chi;
  if (x < 1e-2) {
    chi = 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0;
  } else {
    chi = 1.5 * (s / x + c / x2 - s / x3);
  }
  const double omega = 0.75 * (-c / x + s / x2 + c / x3);
  return {chi, omega};
}

// chi = 3 j1(x)/x, Omega = -3/2 [sin x/x^2 + cos x/x^3]
CollectiveCoupling ParallelDipoleCoupling::evaluate(double x) const {
  require_positive_distance(x);
  const double s = std::sin(x), c = std::cos(x);
  const double x2 = x * x, x3 = x2 * x;
  double chi;
  if (x < 1e-2) {
    chi = 1.0 - x2 / 10.0 + x2 * x2 / 280.0;
  } else {
    chi = 3.0 * (s / x3 - c / x2);
  }
  const double omega = -1.5 * (s / x2 + c / x3);
  return {chi, omega};
}

ConstantCoupling::ConstantCoupling(CollectiveCoupling value) : value_(value) {
  if (!(std::abs(value.chi) <= 1.0))
    throw InvalidParameter("tabulated chi must satisfy |chi| <= 1");
}

CollectiveCoupling ConstantCoupling::evaluate(double x) const {
  require_positive_distance(x);
  return value_;
}

CollectiveCoupling collective_coupling(double x) {
  return PerpendicularDipoleCoupling{}.evaluate(x);
}

SecularCheck secular_regime_check(const DressedParams& params, int n_atoms,
                                  double threshold) {
  const double margin =
      params.gen_rabi() / (static_cast<double>(n_atoms) * params.band_gammas().max());
  return {margin >= threshold, margin};
}

}  // namespace mollow
