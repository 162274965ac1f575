#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include "mollow/error.hpp"
#include "mollow/params.hpp"

using namespace mollow;

namespace {

// (3 / 8 pi) \int dOmega [1 - (d.k)^2] cos(x k.r) with r along z, evaluated as
// a nested 2-D quadrature over the sphere. `dipole_along_axis` selects d = z,
// otherwise d = x (perpendicular to the separation).
double chi_by_sphere_quadrature(double x, bool dipole_along_axis) {
  using boost::math::quadrature::gauss_kronrod;
  auto inner = [&](double theta) {
    auto integrand = [&](double az) {
      const double kx = std::sin(theta) * std::cos(az);
      const double kz = std::cos(theta);
      const double proj = dipole_along_axis ? kz : kx;
      return (1.0 - proj * proj) * std::cos(x * kz) * std::sin(theta);
    };
    return gauss_kronrod<double, 61>::integrate(integrand, 0.0, 2.0 * kPi, 10, 1e-13);
  };
  const double total = gauss_kronrod<double, 61>::integrate(inner, 0.0, kPi, 15, 1e-13);
  return 3.0 / (8.0 * kPi) * total;
}

}  // namespace

TEST_CASE("mixing angle special values") {
  CHECK(mixing_angle(1.0, 0.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(mixing_angle(37.0, 0.0) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(mixing_angle(2.0, 4.0) == doctest::Approx(kPi / 8).epsilon(1e-15));
  CHECK(mixing_angle(2.0, -4.0) == doctest::Approx(3 * kPi / 8).epsilon(1e-15));
}

TEST_CASE("mixing angle rejects a missing drive") {
  CHECK_THROWS_AS(mixing_angle(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(mixing_angle(-1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(mixing_angle(std::nan(""), 1.0), InvalidParameter);
}

TEST_CASE("mixing angle satisfies cot(2 theta) = detuning / (2 rabi)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> omega(0.05, 100.0), delta(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const double o = omega(rng), d = delta(rng);
    const double theta = mixing_angle(o, d);
    REQUIRE(theta > 0.0);
    REQUIRE(theta < kPi / 2);
    CHECK(std::abs(2.0 * o / std::tan(2.0 * theta) - d) <= 1e-12 * std::max(1.0, std::abs(d)));
    CHECK(std::sin(theta) * std::sin(theta) + std::cos(theta) * std::cos(theta) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("generalized Rabi frequency") {
  CHECK(generalized_rabi(3.0, 8.0) == 5.0);
  CHECK(generalized_rabi(1.0, 0.0) == 1.0);
  CHECK(generalized_rabi(0.0, 4.0) == 2.0);
  CHECK_THROWS_AS(generalized_rabi(-1.0, 0.0), InvalidParameter);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double o = std::abs(u(rng)), d = u(rng);
    const double g = generalized_rabi(o, d);
    CHECK(g >= o);
    CHECK(g >= std::abs(d) / 2);
  }
}

TEST_CASE("dressed parameters derive theta, Omega~ and band frequencies") {
  const auto p = DressedParams::make(3.0, 8.0, {1.0, 2.0, 3.0}, 10.0);
  CHECK(p.gen_rabi() * p.gen_rabi() ==
        doctest::Approx(p.rabi() * p.rabi() + 0.25 * p.detuning() * p.detuning()).epsilon(1e-15));
  CHECK(p.band_frequency(Band::C) == 10.0);
  CHECK(p.band_frequency(Band::L) == 0.0);
  CHECK(p.band_frequency(Band::R) == 20.0);
  CHECK(p.band_gammas().max() == 3.0);
  CHECK_FALSE(p.resonant());
  CHECK(DressedParams::make(5.0, 0.0).resonant());
  CHECK_THROWS_AS(DressedParams::make(1.0, 0.0, {1.0, 0.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(DressedParams::make(0.0, 1.0), InvalidParameter);
}

TEST_CASE("detection phase") {
  const ChainGeometry chain(2, 5.0);
  CHECK(std::abs(detection_phase(chain, kPi / 2)) < 1e-14);
  CHECK(detection_phase(chain, 0.0) == doctest::Approx(10 * kPi).epsilon(1e-15));
  CHECK(detection_phase(chain, 2 * kPi / 3) == doctest::Approx(-5 * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(detection_phase(chain, -0.1), InvalidParameter);
  CHECK_THROWS_AS(detection_phase(chain, 3.2), InvalidParameter);

  SUBCASE("odd about pi/2 and bounded by k r0") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alpha(0.0, kPi), r0(0.01, 20.0);
    for (int i = 0; i < 300; ++i) {
      const ChainGeometry g(2 + i % 7, r0(rng));
      const double a = alpha(rng);
      CHECK(detection_phase(g, kPi - a) == doctest::Approx(-detection_phase(g, a)).epsilon(1e-12));
      CHECK(std::abs(detection_phase(g, a)) <= g.wavenumber() * g.spacing());
    }
  }
}

TEST_CASE("chain geometry validation") {
  CHECK_THROWS_AS(ChainGeometry(1, 1.0), InvalidParameter);
  CHECK_THROWS_AS(ChainGeometry(2, 0.0), InvalidParameter);
  CHECK(ChainGeometry(8, 5.0).wavenumber() == doctest::Approx(2 * kPi));
}

TEST_CASE("collective coupling limits") {
  CHECK(collective_coupling(1e-4).chi == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(collective_coupling(1e4).chi) < 1e-3);
  CHECK(std::abs(collective_coupling(1e4).omega_dd) < 1e-3);
  CHECK(std::abs(collective_coupling(1e3).chi) < 1e-2);
  // static dipole-dipole limit 3 / (4 x^3)
  CHECK(collective_coupling(1e-3).omega_dd == doctest::Approx(0.75e9).epsilon(1e-5));
  CHECK_THROWS_AS(collective_coupling(0.0), InvalidParameter);
  CHECK_THROWS_AS(collective_coupling(-1.0), InvalidParameter);
}

TEST_CASE("collective coupling is bounded and continuous across the series branch") {
  for (double x = 1e-3; x < 200.0; x *= 1.01) {
    CHECK(std::abs(collective_coupling(x).chi) <= 1.0);
    CHECK(std::abs(ParallelDipoleCoupling{}.evaluate(x).chi) <= 1.0);
  }
  const double below = collective_coupling(1e-2 * (1 - 1e-12)).chi;
  const double above = collective_coupling(1e-2 * (1 + 1e-12)).chi;
  CHECK(std::abs(below - above) < 1e-10);
}

TEST_CASE("collective coupling at r0 = 5 lambda matches sphere quadrature") {
  const double x = 2 * kPi * 5.0;
  const double frozen = 0.0015198177546350666;  // 3 / (2 x^2), exact at x = 10 pi
  CHECK(collective_coupling(x).chi == doctest::Approx(frozen).epsilon(1e-12));
  CHECK(chi_by_sphere_quadrature(x, false) == doctest::Approx(frozen).epsilon(1e-9));

  for (double xs : {0.3, 1.7, 4.0, 9.5}) {
    CAPTURE(xs);
    CHECK(collective_coupling(xs).chi ==
          doctest::Approx(chi_by_sphere_quadrature(xs, false)).epsilon(1e-9));
    CHECK(ParallelDipoleCoupling{}.evaluate(xs).chi ==
          doctest::Approx(chi_by_sphere_quadrature(xs, true)).epsilon(1e-9));
  }
}

TEST_CASE("constant coupling model") {
  const ConstantCoupling c({0.3, -0.2});
  CHECK(c.evaluate(12.0).chi == 0.3);
  CHECK(c.evaluate(12.0).omega_dd == -0.2);
  CHECK_THROWS_AS(ConstantCoupling({1.5, 0.0}), InvalidParameter);
}

TEST_CASE("secular regime check") {
  const auto strong = DressedParams::make(100.0, 0.0);
  auto r = secular_regime_check(strong, 2);
  CHECK(r.pass);
  CHECK(r.margin == doctest::Approx(50.0));

  r = secular_regime_check(DressedParams::make(5.0, 0.0), 2, 10.0);
  CHECK_FALSE(r.pass);
  CHECK(r.margin == doctest::Approx(2.5));

  r = secular_regime_check(DressedParams::make(80.0, 0.0), 8, 10.0);
  CHECK(r.pass);
  CHECK(r.margin == 10.0);

  r = secular_regime_check(DressedParams::make(100.0, 0.0, {1.0, 4.0, 1.0}), 2);
  CHECK(r.margin == doctest::Approx(12.5));
}

TEST_CASE("band pairs") {
  CHECK(all_band_pairs().size() == 9);
  CHECK(parse_band_pair("lr") == BandPair{Band::L, Band::R});
  CHECK(to_string(BandPair{Band::C, Band::R}) == "CR");
  CHECK_FALSE(parse_band_pair("LX"));
  CHECK_FALSE(parse_band_pair("LLL"));
}
