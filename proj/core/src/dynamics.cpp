#include "mollow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "mollow/error.hpp"
#include "mollow/format.hpp"

namespace mollow {

Populations TwoAtomState::populations() const noexcept {
  return {
      (1.0 + z + x) / 4.0,
      (1.0 + z - x) / 4.0,
      (1.0 - z + 2.0 * y) / 4.0,
      (1.0 - z - 2.0 * y) / 4.0,
  };
}

bool TwoAtomState::physical(double tol) const noexcept {
  const auto p = populations();
  for (double v : {p.ee, p.gg, p.ss, p.aa})
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  return true;
}

ChiBands chi_bands_for_spacing(double spacing, const CouplingModel& model) {
  const double chi = model.evaluate(2.0 * kPi * spacing).chi;
  return {chi, chi, chi};
}

double DynamicsCoefficients::max_abs() const noexcept {
  return std::max({std::abs(xi_plus), std::abs(xi_minus), std::abs(zeta_plus),
                   std::abs(zeta_minus), std::abs(c0)});
}

DynamicsCoefficients coefficients(const DressedParams& params, const ChiBands& chi) {
  for (double v : {chi.lower, chi.central, chi.upper})
    if (!(std::abs(v) <= 1.0))
      throw InvalidParameter("collective chi must satisfy |chi| <= 1");

  const auto& g = params.band_gammas();
  const double s2 = params.sin_sq();
  const double c2 = params.cos_sq();
  const double sin4 = s2 * s2;
  const double cos4 = c2 * c2;
  const double sin2_2theta = 4.0 * s2 * c2;

  const double lower = g.lower * sin4;
  const double upper = g.upper * cos4;
  DynamicsCoefficients c;
  c.xi_plus = lower + upper;
  c.xi_minus = lower - upper;
  c.zeta_plus = chi.lower * lower + chi.upper * upper;
  c.zeta_minus = chi.lower * lower - chi.upper * upper;
  c.c0 = g.central * (1.0 - chi.central) * sin2_2theta;
  return c;
}

Eigen::Matrix3d system_matrix(const DynamicsCoefficients& c) {
  Eigen::Matrix3d a;
  // clang-format off
  a << -2.0 * c.xi_plus,   4.0 * c.zeta_minus,               0.0,
       -c.zeta_minus,     -2.0 * (c.c0 + c.xi_plus),         2.0 * c.zeta_plus,
        2.0 * c.xi_minus,  4.0 * c.zeta_plus,               -4.0 * c.xi_plus;
  // clang-format on
  return a;
}

Eigen::Vector3d inhomogeneity(const DynamicsCoefficients& c) {
  return {4.0 * c.xi_minus, 0.0, 0.0};
}

Eigen::Vector3d derivative(const TwoAtomState& s, const DynamicsCoefficients& c) {
  return system_matrix(c) * s.vector() + inhomogeneity(c);
}

double steady_state_residual(const TwoAtomState& s, const DynamicsCoefficients& c) {
  return derivative(s, c).norm();
}

double max_stable_step(const DynamicsCoefficients& c) {
  return 0.1 / c.max_abs();
}

std::vector<TwoAtomState> evolve(const TwoAtomState& initial,
                                 const DynamicsCoefficients& c, double t_end,
                                 double dt) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw InvalidParameter("evolve: t_end must be finite and >= 0");
  const double dt_max = max_stable_step(c);
  if (!(dt > 0.0) || !(dt <= dt_max)) {
    std::ostringstream msg;
    msg << "evolve: step " << dt << " outside (0, " << dt_max
        << "]; reduce dt to at most 0.1 / max coefficient";
    throw StepSizeError(msg.str(), dt, dt_max);
  }

  const Eigen::Matrix3d a = system_matrix(c);
  const Eigen::Vector3d b = inhomogeneity(c);
  auto f = [&](const Eigen::Vector3d& v) -> Eigen::Vector3d { return a * v + b; };

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  std::vector<TwoAtomState> trajectory;
  trajectory.reserve(steps + 1);
  trajectory.push_back(initial);

  Eigen::Vector3d v = initial.vector();
  const double t0 = initial.time;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const double h = std::min(dt, t0 + t_end - t);
    const Eigen::Vector3d k1 = f(v);
    const Eigen::Vector3d k2 = f(v + 0.5 * h * k1);
    const Eigen::Vector3d k3 = f(v + 0.5 * h * k2);
    const Eigen::Vector3d k4 = f(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t_next = (i + 1 == steps) ? t0 + t_end : t + h;
    trajectory.push_back(TwoAtomState::from_vector(v, t_next));
  }
  return trajectory;
}

TwoAtomState steady_state(const DynamicsCoefficients& c) {
  const Eigen::Matrix3d a = system_matrix(c);
  const double scale = a.cwiseAbs().maxCoeff();
  const Eigen::PartialPivLU<Eigen::Matrix3d> lu(a);
  const double det = lu.determinant();
  if (scale == 0.0 || std::abs(det) < 1e-14 * scale * scale * scale) {
    std::ostringstream msg;
    msg << "steady_state: singular population equations (det = " << det << ")";
    throw DegenerateParameters(msg.str(), det);
  }
  const Eigen::Vector3d v = lu.solve(-inhomogeneity(c));
  return TwoAtomState::from_vector(v);
}

void write_trajectory_csv(std::ostream& out, std::span<const TwoAtomState> trajectory) {
  out << "t,x,y,z\n";
  for (const auto& s : trajectory)
    out << format_double(s.time) << ',' << format_double(s.x) << ','
        << format_double(s.y) << ',' << format_double(s.z) << '\n';
}

}  // namespace mollow
