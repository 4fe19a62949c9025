#include <cmath>
#include <vector>

#include "textlab/errors.hpp"
#include "textlab/heaps.hpp"

#include <doctest.h>

using namespace textlab;

TEST_SUITE("heaps") {

TEST_CASE("the first word is always new") {
  const auto d = RankDistribution::power_law(10, 1.0);
  const auto table = evolve_master_equation(d, 1);
  CHECK(table.n_max() == 1);
  CHECK(table.probability(1, 1) == 1.0);
  CHECK(table.expected_w(1) == 1.0);
  CHECK_THROWS_AS(evolve_master_equation(d, 0), std::domain_error);
}

TEST_CASE("two-token two-word table by hand") {
  // V=2, exponent 1: F(1) = 2/3. After two tokens:
  // P(1,2) = F(1) = 2/3, P(2,2) = 1 - F(1) = 1/3.
  const auto d = RankDistribution::power_law(2, 1.0);
  const auto table = evolve_master_equation(d, 2);
  CHECK(table.probability(1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(table.probability(2, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("the table conserves probability and respects its support") {
  const auto d = RankDistribution::power_law(7, 1.3);
  const auto table = evolve_master_equation(d, 60);
  for (std::uint64_t n = 1; n <= 60; ++n) {
    double sum = 0.0;
    for (std::uint32_t w = 1; w <= table.max_w(n); ++w) sum += table.probability(w, n);
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(table.max_w(n) == std::min<std::uint64_t>(n, 7));
    CHECK(table.probability(static_cast<std::uint32_t>(n) + 1, n) == 0.0);
  }
  // Vocabulary exhaustion: by n = 60 nearly all mass sits at w = V.
  CHECK(table.expected_w(60) <= 7.0);
  CHECK(table.expected_w(60) > 6.0);
}

TEST_CASE("uniform ranks make the exact table match the closed form") {
  const auto d = RankDistribution::power_law(5, 0.0);
  const auto table = evolve_master_equation(d, 12);
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const double closed = uniform_expected_vocab(5, static_cast<double>(n));
    CHECK(table.expected_w(n) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("mean-field recursion starts at one and matches hand values") {
  const auto d2 = RankDistribution::power_law(2, 1.0);
  const auto curve = expected_vocab_recursion(d2, 2);
  REQUIRE(curve.lengths.size() == 2);
  CHECK(curve.expected_w[0] == 1.0);
  // 1 + (1 - F(1)) = 1 + 1/3.
  CHECK(curve.expected_w[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("mean-field recursion is exact for uniform ranks") {
  const auto d = RankDistribution::power_law(10, 0.0);
  const auto curve = expected_vocab_recursion(d, 50);
  for (std::size_t i = 0; i < curve.lengths.size(); ++i) {
    const double expected = uniform_expected_vocab(10, curve.lengths[i]);
    CHECK(curve.expected_w[i] ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("curves are nondecreasing and bounded by min(n, V)") {
  const auto d = RankDistribution::power_law(40, 1.5);
  const auto curve = expected_vocab_recursion(d, 200);
  for (std::size_t i = 0; i < curve.lengths.size(); ++i) {
    if (i > 0) CHECK(curve.expected_w[i] >= curve.expected_w[i - 1]);
    CHECK(curve.expected_w[i] <= std::min(curve.lengths[i], 40.0) + 1e-12);
  }
}

TEST_CASE("ode solution for uniform ranks tracks the exponential saturation") {
  const std::uint32_t v = 1000;
  const auto d = RankDistribution::power_law(v, 0.0);
  const auto curve = integrate_heaps_ode(d, 3.0 * v);
  for (std::size_t i = 0; i < curve.lengths.size(); i += 25) {
    const double n = curve.lengths[i];
    const double expected = v * (1.0 - std::exp(-n / v));
    CHECK(std::abs(curve.expected_w[i] - expected) / expected < 5e-3);
  }
}

TEST_CASE("ode exponents for power-law tails land at 1/gamma") {
  const auto d2 = RankDistribution::power_law(1000000, 2.0);
  const auto c2 = integrate_heaps_ode(d2, 1e4);
  const auto fit2 = fit_beta(c2, 1e3, 1e4);
  CHECK(fit2.beta == doctest::Approx(0.5).epsilon(0.1));

  const auto d15 = RankDistribution::power_law(1000000, 1.5);
  const auto c15 = integrate_heaps_ode(d15, 1e4);
  const auto fit15 = fit_beta(c15, 1e3, 1e4);
  CHECK(fit15.beta == doctest::Approx(2.0 / 3.0).epsilon(0.075));
}

TEST_CASE("the halving self-check rejects a hopeless grid") {
  const auto d = RankDistribution::power_law(10000, 2.0);
  OdeControls controls;
  controls.steps_per_decade = 1;
  controls.relative_tolerance = 1e-12;
  CHECK_THROWS_AS(integrate_heaps_ode(d, 1e4, controls), ConvergenceError);
}

TEST_CASE("beta fit recovers exact power laws") {
  HeapsCurve curve;
  for (double n = 1.0; n <= 1024.0; n *= 2.0) {
    curve.lengths.push_back(n);
    curve.expected_w.push_back(std::pow(n, 0.5));
  }
  const auto fit = fit_beta(curve, 1.0, 2000.0);
  CHECK(fit.beta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.standard_error == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(fit.points == 11);

  HeapsCurve linear;
  for (double n = 1.0; n <= 100.0; n += 7.0) {
    linear.lengths.push_back(n);
    linear.expected_w.push_back(3.0 * n);
  }
  CHECK(fit_beta(linear, 1.0, 100.0).beta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta fit needs five points in range") {
  HeapsCurve curve{{1.0, 2.0, 4.0, 8.0}, {1.0, 1.4, 2.0, 2.8}};
  CHECK_THROWS_AS(fit_beta(curve, 1.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(fit_beta(curve, 10.0, 5.0), std::domain_error);
}

TEST_CASE("top-decade fit window is [n_max/10, n_max]") {
  HeapsCurve curve;
  for (double n = 1.0; n <= 1000.0; n *= 1.2) {
    curve.lengths.push_back(n);
    curve.expected_w.push_back(2.0 * std::pow(n, 0.7));
  }
  const auto fit = fit_beta_top_decade(curve);
  CHECK(fit.n_hi == doctest::Approx(curve.lengths.back()));
  CHECK(fit.n_lo == doctest::Approx(curve.lengths.back() / 10.0));
  CHECK(fit.beta == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("curve interpolation is exact on power laws and clamps outside") {
  HeapsCurve curve;
  for (double n = 1.0; n <= 256.0; n *= 4.0) {
    curve.lengths.push_back(n);
    curve.expected_w.push_back(std::pow(n, 0.6));
  }
  // Log-log interpolation reproduces the power law exactly between knots.
  CHECK(curve_value_at(curve, 10.0) == doctest::Approx(std::pow(10.0, 0.6)).epsilon(1e-12));
  CHECK(curve_value_at(curve, 0.5) == curve.expected_w.front());
  CHECK(curve_value_at(curve, 1e9) == curve.expected_w.back());
}

}  // TEST_SUITE
