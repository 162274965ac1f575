#include <cmath>
#include <random>

#include <doctest.h>

#include "mollow/correlations.hpp"
#include "mollow/error.hpp"

using namespace mollow;

namespace {

constexpr BandPair CC{Band::C, Band::C}, LL{Band::L, Band::L}, RR{Band::R, Band::R};
constexpr BandPair LR{Band::L, Band::R}, RL{Band::R, Band::L};
constexpr BandPair CL{Band::C, Band::L}, CR{Band::C, Band::R}, LC{Band::L, Band::C},
    RC{Band::R, Band::C};

// |sum_j e^{i j d}|^2 by direct summation.
double array_factor_by_sum(int n, double d) {
  double re = 0, im = 0;
  for (int j = 0; j < n; ++j) {
    re += std::cos(j * d);
    im += std::sin(j * d);
  }
  return re * re + im * im;
}

}  // namespace

TEST_CASE("array factor") {
  for (int n : {1, 2, 5, 8, 100}) CHECK(phi(n, 0.0) == n * n);
  CHECK(phi(2, kPi / 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi(8, kPi / 4) < 1e-28);
}

TEST_CASE("array factor removable singularity is exact") {
  for (int n : {2, 3, 7, 8, 1000})
    for (int m = -4; m <= 4; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(phi(n, 2.0 * kPi * m) == static_cast<double>(n) * n);
    }
  // detection phase of r0 = 5 lambda at alpha = 0 lands on 10 pi
  CHECK(phi(8, 2.0 * kPi * 5.0 * std::cos(0.0)) == 64.0);
}

TEST_CASE("array factor matches direct summation and stays in [0, N^2]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + i % 12;
    const double x = d(rng);
    const double v = phi(n, x);
    CHECK(v >= 0.0);
    CHECK(v <= n * n * (1 + 1e-12));
    CHECK(v == doctest::Approx(array_factor_by_sum(n, x)).epsilon(1e-9));
  }
  // close to, but outside of, the branch threshold
  CHECK(phi(6, 1e-7) == doctest::Approx(36.0).epsilon(1e-10));
}

TEST_CASE("two-atom correlators") {
  CHECK(g2_two_atom(CC, 0, 0) == 2.0);
  for (double d : {-3.0, 0.1, 1.0, 7.5}) {
    CHECK(g2_two_atom(LL, d, d) == 1.0);
    CHECK(g2_two_atom(RR, d, d) == 1.0);
  }
  CHECK(g2_two_atom(LR, 1.2, kPi - 1.2) == doctest::Approx(1.0).epsilon(1e-15));
  for (auto p : {CL, CR, LC, RC}) CHECK(g2_two_atom(p, 0.3, 2.9) == 1.0);
}

TEST_CASE("chain correlators") {
  CHECK(g2_chain(LL, 8, 0.7, 0.7) == 1.75);
  CHECK(g2_chain(LR, 8, 0.4, -0.4) == 2.0);
  CHECK(g2_chain(LL, 8, kPi / 4 + 0.2, 0.2) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(g2_chain(CR, 9, 1.0, 2.0) == 1.0);
  CHECK_THROWS_AS(g2_chain(LL, 1, 0, 0), InvalidParameter);
  CHECK_THROWS_AS(csi(1, 0, 0), InvalidParameter);
}

TEST_CASE("chain correlators reduce to the two-atom forms at N = 2") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-4 * kPi, 4 * kPi);
  for (int i = 0; i < 100; ++i) {
    const double d1 = d(rng), d2 = d(rng);
    for (auto p : all_band_pairs())
      CHECK(std::abs(g2_chain(p, 2, d1, d2) - g2_two_atom(p, d1, d2)) < 1e-12);
    const double eq12 = std::pow((1 + std::cos(d1 - d2)) / (3 + std::cos(d1 + d2)), 2);
    CHECK(std::abs(csi(2, d1, d2).left - eq12) < 1e-12);
    CHECK(std::abs(csi(2, d1, d2).right - eq12) < 1e-12);
  }
}

TEST_CASE("Cauchy-Schwarz parameters") {
  CHECK(csi(2, 0, 0).left == 0.25);
  CHECK(csi(2, 0, 0).violated());
  CHECK(csi(2, kPi + 0.3, 0.3).left < 1e-30);
  CHECK(csi(8, kPi / 2, kPi / 2).left == doctest::Approx(3.0625).epsilon(1e-14));
  CHECK_FALSE(csi(8, kPi / 2, kPi / 2).violated());
  // N -> infinity, two-photon detector at an odd multiple of pi/2
  CHECK(csi(1000000, kPi / 2, kPi / 2).left == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("Cauchy-Schwarz parameter is the ratio of the band correlators") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + i % 9;
    const double d1 = d(rng), d2 = d(rng);
    const double ll = g2_chain(LL, n, d1, d2), rr = g2_chain(RR, n, d1, d2);
    const double lr = g2_chain(LR, n, d1, d2), rl = g2_chain(RL, n, d1, d2);
    const auto c = csi(n, d1, d2);
    CHECK(c.left == doctest::Approx(ll * rr / (lr * lr)).epsilon(1e-12));
    CHECK(c.right == doctest::Approx(ll * rr / (rl * rl)).epsilon(1e-12));
  }
}

TEST_CASE("mixed-detector limits") {
  for (int n : {3, 8, 50, 1000}) {
    const double expect = std::pow(1.0 - 1.0 / n, 2);
    for (int m : {0, 1, 2, 3}) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(csi(n, 0.0, 2 * m * kPi).left == doctest::Approx(expect).epsilon(1e-15));
    }
  }
  // odd multiples of pi: phi(n pi) = 0 for even N, giving the (1 - 2/N)^2 branch
  for (int n : {8, 1000}) {
    CHECK(csi(n, 0.0, kPi).left == doctest::Approx(std::pow(1.0 - 2.0 / n, 2)).epsilon(1e-12));
  }
  // pi/2 with N a multiple of four
  for (int n : {8, 1000})
    CHECK(csi(n, 0.0, kPi / 2).left == doctest::Approx(std::pow(1.0 - 2.0 / n, 2)).epsilon(1e-12));
}

TEST_CASE("detector exchange, reflection and band symmetries") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(-15, 15);
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + i % 10;
    const double d1 = d(rng), d2 = d(rng);
    for (auto p : all_band_pairs()) {
      const double v = g2_chain(p, n, d1, d2);
      CHECK(v == doctest::Approx(g2_chain(p, n, d2, d1)).epsilon(1e-12));
      CHECK(v == doctest::Approx(g2_chain(p, n, -d1, -d2)).epsilon(1e-12));
      CHECK(v >= 0.0);
    }
    CHECK(g2_chain(LL, n, d1, d2) == g2_chain(RR, n, d1, d2));
    CHECK(g2_chain(LR, n, d1, d2) == g2_chain(RL, n, d1, d2));
    for (auto p : {CL, CR, LC, RC}) CHECK(g2_chain(p, n, d1, d2) == 1.0);
  }
}

TEST_CASE("two-atom ranges on a dense grid") {
  const int steps = 181;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const double d1 = -kPi + 2 * kPi * i / (steps - 1), d2 = -kPi + 2 * kPi * j / (steps - 1);
      const double cc = g2_two_atom(CC, d1, d2), ll = g2_two_atom(LL, d1, d2), lr = g2_two_atom(LR, d1, d2);
      CHECK((cc >= 0.0 && cc <= 2.0));
      CHECK((ll >= 0.0 && ll <= 1.0));
      CHECK((lr >= 1.0 && lr <= 2.0));
      const double c = csi(2, d1, d2).left;
      CHECK((c >= 0.0 && c <= 1.0));
    }
}

TEST_CASE("chain ranges follow from phi in [0, N^2]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 + i % 15;
    const double d1 = d(rng), d2 = d(rng), inv = 1.0 / n, eps = 1e-12;
    const double lr = g2_chain(LR, n, d1, d2), ll = g2_chain(LL, n, d1, d2), cc = g2_chain(CC, n, d1, d2);
    CHECK((lr >= 1 - eps && lr <= 2 + eps));
    CHECK((ll >= 1 - 2 * inv - eps && ll <= 2 - 2 * inv + eps));
    CHECK((cc >= 1 - 2 * inv - eps && cc <= 3 - 2 * inv + eps));
  }
}

TEST_CASE("weak-field single-detector pattern") {
  CHECK(g2_weak_field(0.5, kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2_weak_field(0.5, 0.0) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK_THROWS_AS(g2_weak_field(1e-10, kPi), PoleError);
  CHECK_THROWS_AS(g2_weak_field(0.0, 0.3), InvalidParameter);
  CHECK_THROWS_AS(g2_weak_field(-0.2, 0.3), InvalidParameter);
}

TEST_CASE("strong-field central-band single-detector pattern") {
  CHECK(g2_strong_central_single_detector(0.0) == 2.0);
  CHECK(g2_strong_central_single_detector(kPi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2_strong_central_single_detector(kPi) == 2.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 100; ++i) {
    const double x = d(rng);
    CHECK(g2_strong_central_single_detector(x) == doctest::Approx(g2_two_atom(CC, x, x)).epsilon(1e-15));
  }
}

TEST_CASE("fringe periods and resolution doubling") {
  CHECK(strong_field_fringe_period() == doctest::Approx(kPi).epsilon(1e-7));
  for (double omega : {0.1, 0.5, 0.9}) {
    CAPTURE(omega);
    CHECK(weak_field_fringe_period(omega) == doctest::Approx(2 * kPi).epsilon(1e-7));
    CHECK(std::abs(fringe_period_ratio(omega) - 2.0) <= 1e-6);
  }
  CHECK_THROWS_AS(fringe_period_ratio(0.0), InvalidParameter);
}

TEST_CASE("correlate bundles value and Cauchy-Schwarz pair") {
  const auto r = correlate(LL, 2, 0.0, 0.0, true);
  CHECK(r.value == 1.0);
  REQUIRE(r.csi);
  CHECK(r.csi->left == 0.25);
  CHECK_FALSE(correlate(LR, 4, 0.1, 0.2).csi);
}

TEST_CASE("closed-form validity flags") {
  auto v = closed_form_validity(DressedParams::make(100.0, 0.0), 2);
  CHECK(v.resonant);
  CHECK(v.secular.pass);
  CHECK(v.ok());
  v = closed_form_validity(DressedParams::make(100.0, 30.0), 2);
  CHECK_FALSE(v.resonant);
  v = closed_form_validity(DressedParams::make(10.0, 0.0), 8);
  CHECK_FALSE(v.secular.pass);
}
