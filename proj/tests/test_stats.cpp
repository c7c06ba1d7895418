#include <doctest.h>

#include <cmath>
#include <vector>

#include "sojourn/errors.hpp"
#include "sojourn/rng.hpp"
#include "sojourn/stats.hpp"

using namespace sojourn;

TEST_SUITE_BEGIN("stats");

TEST_CASE("one-sample ks") {
  // n standard normal draws against the normal cdf: should not reject
  Rng rng = Rng::substream(3, 0);
  std::vector<double> z(5000);
  for (auto& v : z) v = rng.normal();
  const auto [d, p] = ks_one_sample(z, normal_cdf);
  CHECK(d < 0.03);
  CHECK(p > 0.01);
  // gross misfit: uniforms against the normal cdf
  std::vector<double> u(1000);
  for (auto& v : u) v = rng.uniform();
  const auto [d2, p2] = ks_one_sample(u, normal_cdf);
  CHECK(p2 < 1e-6);
  const std::vector<double> empty;
  CHECK_THROWS_AS(ks_one_sample(empty, normal_cdf), Error);
}

TEST_CASE("two-sample ks") {
  std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  const auto [d, p] = ks_two_sample(a, a);
  CHECK(d == 0.0);
  CHECK(p == doctest::Approx(1.0));
  Rng rng = Rng::substream(3, 1);
  std::vector<double> x(800), y(800);
  for (auto& v : x) v = rng.normal();
  for (auto& v : y) v = rng.normal() + 2.0;  // shifted: must reject
  CHECK(ks_two_sample(x, y).second < 1e-6);
}

TEST_CASE("log-log fit") {
  std::vector<std::pair<double, double>> pts;
  for (double T : {64.0, 128.0, 256.0, 512.0}) {
    pts.emplace_back(T, 0.37 * std::pow(T, 1.4));
  }
  const auto fit = fit_loglog_slope(pts);
  CHECK(fit.slope == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(fit.ci95 == doctest::Approx(0.0).epsilon(1e-9));

  // constant series has slope zero
  std::vector<std::pair<double, double>> flat{{1.0, 2.0}, {10.0, 2.0}, {100.0, 2.0}};
  CHECK(fit_loglog_slope(flat).slope == doctest::Approx(0.0));

  // 5% multiplicative noise keeps the slope in [0.9, 1.1]
  Rng rng = Rng::substream(3, 2);
  std::vector<std::pair<double, double>> noisy;
  for (double T : {8.0, 16.0, 32.0, 64.0}) {
    noisy.emplace_back(T, T * (1.0 + 0.05 * rng.normal()));
  }
  const auto nf = fit_loglog_slope(noisy);
  CHECK(nf.slope > 0.9);
  CHECK(nf.slope < 1.1);

  CHECK_THROWS_AS(fit_loglog_slope(std::vector<std::pair<double, double>>{
                      {1.0, 1.0}, {2.0, 2.0}}),
                  Error);
  CHECK_THROWS_AS(fit_loglog_slope(std::vector<std::pair<double, double>>{
                      {1.0, -1.0}, {2.0, 2.0}, {3.0, 3.0}}),
                  Error);
}

TEST_CASE("moments") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5));
  CHECK(variance(v) == doctest::Approx(5.0 / 3.0));
  std::vector<double> skewed{0.0, 0.0, 0.0, 0.0, 10.0};
  CHECK(skewness(skewed) > 0.0);
}

TEST_SUITE_END();
