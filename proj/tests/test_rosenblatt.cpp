#include <doctest.h>

#include <cmath>

#include "sojourn/errors.hpp"
#include "sojourn/rosenblatt.hpp"
#include "sojourn/stats.hpp"

using namespace sojourn;

TEST_SUITE_BEGIN("rosenblatt");

TEST_CASE("parameters") {
  const auto p = rosenblatt_params(0.25);
  CHECK(p.sigma * p.sigma == doctest::Approx(0.1875).epsilon(1e-15));
  const double expected_a =
      p.sigma / (2.0 * std::tgamma(0.25) * std::sin(0.375 * M_PI));
  CHECK(p.a == doctest::Approx(expected_a).epsilon(1e-14));
  CHECK(p.a > 0.0);
  CHECK_THROWS_AS(rosenblatt_params(0.5), Error);
  CHECK_THROWS_AS(rosenblatt_params(0.0), Error);
  // sigma vanishes at the Gaussian end
  CHECK(rosenblatt_params(0.4999).sigma < 0.01);
}

TEST_CASE("variance identity 2 sigma^2 a_2 = 1") {
  for (double beta = 0.05; beta < 0.46; beta += 0.05) {
    const auto p = rosenblatt_params(beta);
    const double a2 = 1.0 / ((1.0 - 2.0 * beta) * (1.0 - beta));
    CHECK(2.0 * p.sigma * p.sigma * a2 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a_j monte carlo") {
  Rng rng = Rng::substream(5, 0);
  const auto [a2, se] = a_j_integral(2, 0.25, 200000, rng);
  CHECK(std::abs(a2 - 8.0 / 3.0) < 4.0 * se);
  Rng rng3 = Rng::substream(5, 1);
  const auto [a3, se3] = a_j_integral(3, 0.25, 100000, rng3);
  CHECK(a3 > 0.0);
  CHECK(se3 > 0.0);
  CHECK_THROWS_AS(a_j_integral(1, 0.25, 10, rng), Error);
}

TEST_CASE("sampler moments") {
  Rng rng = Rng::substream(5, 2);
  const auto draws = sample_rosenblatt(0.25, 1024.0, 4097, 4000, rng);
  CHECK(std::abs(mean(draws)) < 4.0 / std::sqrt(4000.0));
  CHECK(variance(draws) == doctest::Approx(1.0).epsilon(0.10));
  CHECK(skewness(draws) > 0.0);
}

TEST_CASE("sampler determinism") {
  Rng r1 = Rng::substream(5, 3), r2 = Rng::substream(5, 3);
  const auto a = sample_rosenblatt(0.3, 256.0, 1025, 50, r1);
  const auto b = sample_rosenblatt(0.3, 256.0, 1025, 50, r2);
  CHECK(a == b);
}

TEST_CASE("composite variance") {
  CompositeSpec spec{{0.5, -0.3, 0.8}, 0.25};
  RosenblattOptions opts{512.0, 0.25};
  Rng rng = Rng::substream(5, 4);
  const auto draws = sample_composite(spec, opts, 4000, rng);
  const double target = 0.25 + 0.09 + 0.64;
  CHECK(variance(draws) == doctest::Approx(target).epsilon(0.12));
  CHECK_THROWS_AS(sample_composite(CompositeSpec{{0.0}, 0.25},
                                   RosenblattOptions{}, 1, rng),
                  Error);
}

TEST_CASE("limit law composition") {
  const auto spec = space_params(Family::Sphere, 2);
  const PowerSpectrum spectrum(spec,
                               {{1, 1.0 / 6.0, 0.3}, {2, 1.0 / 10.0, 0.8}});
  Rng rng = Rng::substream(5, 5);
  RosenblattOptions opts{512.0, 0.5};
  const auto law = limit_law_sample(spec, spectrum, 2, 2.0, 2000, rng, opts);
  // k * dim(Y_1) = 2 * 3 = 6 equal coefficients, unit norm after rescale
  REQUIRE(law.coefficients.size() == 6);
  for (double c : law.coefficients) {
    CHECK(c == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
  }
  CHECK(law.pre_rescale_variance > 0.0);
  CHECK(variance(law.samples) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(std::abs(mean(law.samples)) < 6.0 / std::sqrt(2000.0));

  const PowerSpectrum srd(spec, {{1, 1.0 / 6.0, 1.0}, {2, 1.0 / 10.0, 1.0}});
  CHECK_THROWS_AS(limit_law_sample(spec, srd, 2, 2.0, 10, rng, opts), Error);
}

TEST_SUITE_END();
