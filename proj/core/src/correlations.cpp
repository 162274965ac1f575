#include "mollow/correlations.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "mollow/error.hpp"

namespace mollow {

double phi(int n_atoms, double delta) {
  const double n = static_cast<double>(n_atoms);
  const double s = std::sin(0.5 * delta);
  if (std::abs(s) < 1e-9) return n * n;
  const double num = std::sin(0.5 * n * delta);
  return (num * num) / (s * s);
}

namespace {

bool is_cross_central(BandPair p) {
  return (p.first == Band::C) != (p.second == Band::C);
}

bool is_same_sideband(BandPair p) {
  return p.first != Band::C && p.first == p.second;
}

}  // namespace

double g2_two_atom(BandPair pair, double delta1, double delta2) {
  if (pair.first == Band::C && pair.second == Band::C)
    return 1.0 + std::cos(delta1) * std::cos(delta2);
  if (is_cross_central(pair)) return 1.0;
  if (is_same_sideband(pair)) return 0.5 * (1.0 + std::cos(delta1 - delta2));
  return 0.5 * (3.0 + std::cos(delta1 + delta2));
}

double g2_chain(BandPair pair, int n_atoms, double delta1, double delta2) {
  if (n_atoms < 2) throw InvalidParameter("g2_chain: need at least two atoms");
  if (is_cross_central(pair)) return 1.0;

  const double n = static_cast<double>(n_atoms);
  const double inv_n2 = 1.0 / (n * n);
  if (pair.first == Band::C)
    return 1.0 - 2.0 / n +
           inv_n2 * (phi(n_atoms, delta1 + delta2) + phi(n_atoms, delta1 - delta2));
  if (is_same_sideband(pair))
    return 1.0 - 2.0 / n + inv_n2 * phi(n_atoms, delta1 - delta2);
  return 1.0 + inv_n2 * phi(n_atoms, delta1 + delta2);
}

CauchySchwarz csi(int n_atoms, double delta1, double delta2) {
  if (n_atoms < 2) throw InvalidParameter("csi: need at least two atoms");
  const double n = static_cast<double>(n_atoms);
  const double ratio = (n * n - 2.0 * n + phi(n_atoms, delta1 - delta2)) /
                       (n * n + phi(n_atoms, delta1 + delta2));
  const double chi = ratio * ratio;
  return {chi, chi};
}

double g2_weak_field(double saturation_omega, double delta) {
  if (!(saturation_omega > 0.0) || !std::isfinite(saturation_omega))
    throw InvalidParameter("g2_weak_field: Omega/gamma must be positive");
  const double s = 1.0 + 2.0 * saturation_omega * saturation_omega;
  const double denom = s + std::cos(delta);
  if (std::abs(denom) < 1e-12)
    throw PoleError("g2_weak_field: s + cos(delta) vanishes (Omega/gamma -> 0)");
  const double r = s / denom;
  return r * r;
}

double g2_strong_central_single_detector(double delta) {
  const double c = std::cos(delta);
  return 1.0 + c * c;
}

namespace {

// Maxima of f on [lo, hi], bracketed on a uniform sample grid and polished
// with Brent's method.
std::vector<double> locate_maxima(const std::function<double(double)>& f,
                                  double lo, double hi, int samples) {
  std::vector<double> xs(samples), fs(samples);
  const double h = (hi - lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    xs[i] = lo + i * h;
    fs[i] = f(xs[i]);
  }
  std::vector<double> maxima;
  const int bits = std::numeric_limits<double>::digits / 2;
  for (int i = 1; i + 1 < samples; ++i) {
    if (fs[i] > fs[i - 1] && fs[i] >= fs[i + 1]) {
      auto [x, fx] = boost::math::tools::brent_find_minima(
          [&](double t) { return -f(t); }, xs[i - 1], xs[i + 1], bits);
      (void)fx;
      maxima.push_back(x);
    }
  }
  return maxima;
}

double fringe_period(const std::function<double(double)>& f) {
  // Window wide enough for at least two maxima of any 2 pi periodic profile.
  const double lo = -2.0 * kPi - 0.5;
  const double hi = 2.0 * kPi + 0.5;
  const auto maxima = locate_maxima(f, lo, hi, 4001);
  if (maxima.size() < 2)
    throw Error("fringe_period: fewer than two maxima in the search window");
  return (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);
}

}  // namespace

double weak_field_fringe_period(double saturation_omega) {
  g2_weak_field(saturation_omega, 0.0);  // validates the drive
  return fringe_period(
      [saturation_omega](double d) { return g2_weak_field(saturation_omega, d); });
}

double strong_field_fringe_period() {
  return fringe_period(g2_strong_central_single_detector);
}

double fringe_period_ratio(double saturation_omega) {
  return weak_field_fringe_period(saturation_omega) / strong_field_fringe_period();
}

CorrelationResult correlate(BandPair pair, int n_atoms, double delta1,
                            double delta2, bool with_csi) {
  CorrelationResult r{pair, delta1, delta2, g2_chain(pair, n_atoms, delta1, delta2),
                      std::nullopt};
  if (with_csi) r.csi = csi(n_atoms, delta1, delta2);
  return r;
}

Validity closed_form_validity(const DressedParams& params, int n_atoms,
                              double secular_threshold) {
  return {params.resonant(), secular_regime_check(params, n_atoms, secular_threshold)};
}

}  // namespace mollow
