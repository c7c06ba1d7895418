#include <doctest.h>

#include <cmath>
#include <vector>

#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"

using namespace sojourn;

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

// generalized Laguerre values L_0^{(v)}..L_n^{(v)} at x
std::vector<double> laguerre(double v, int n, double x) {
  std::vector<double> l(n + 1);
  l[0] = 1.0;
  if (n == 0) return l;
  l[1] = 1.0 + v - x;
  for (int i = 1; i < n; ++i) {
    l[i + 1] = ((2.0 * i + 1.0 + v - x) * l[i] - (i + v) * l[i - 1]) /
               static_cast<double>(i + 1);
  }
  return l;
}

// Parseval layer weights of the chi-square indicator in closed Laguerre form,
// an independent oracle for the Hermite-composition sums
std::vector<double> laguerre_layers(int k, double u, int q_max) {
  const double nu = 0.5 * k - 1.0;
  const double a = 0.5 * u;
  const auto lag = laguerre(nu + 1.0, q_max, a);
  std::vector<double> t(q_max + 1, 0.0);
  for (int q = 1; q <= q_max; ++q) {
    const double log_c = -a + (nu + 1.0) * std::log(a) +
                         std::log(std::abs(lag[q - 1])) - std::log(double(q)) -
                         std::lgamma(nu + 1.0);
    const double log_t = 2.0 * log_c + std::lgamma(q + 1.0) +
                         std::lgamma(nu + 1.0) - std::lgamma(q + nu + 1.0);
    t[q] = std::exp(log_t);
  }
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("chaos");

TEST_CASE("hermite recurrences") {
  const auto h = hermite_eval(4, 1.3);
  CHECK(h[0] == 1.0);
  CHECK(h[1] == doctest::Approx(1.3));
  CHECK(h[2] == doctest::Approx(1.3 * 1.3 - 1.0));
  CHECK(h[3] == doctest::Approx(std::pow(1.3, 3) - 3.0 * 1.3));
  CHECK(h[4] == doctest::Approx(std::pow(1.3, 4) - 6.0 * 1.3 * 1.3 + 3.0));
  const auto hn = hermite_eval_normalized(20, 0.7);
  const auto hp = hermite_eval(20, 0.7);
  for (int q = 0; q <= 20; ++q) {
    CHECK(hn[q] ==
          doctest::Approx(hp[q] / std::sqrt(std::tgamma(q + 1.0))).epsilon(1e-11));
  }
}

TEST_CASE("incomplete gamma") {
  // P(1/2, x) = erf(sqrt(x))
  for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(regularized_lower_gamma(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-13));
  }
  // P(1, x) = 1 - e^{-x}
  CHECK(regularized_lower_gamma(1.0, 2.0) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  CHECK(std::exp(log_regularized_lower_gamma(3.5, 1.0)) ==
        doctest::Approx(regularized_lower_gamma(3.5, 1.0)).epsilon(1e-12));
  // log form stays finite deep in the tail
  CHECK(log_regularized_lower_gamma(200.0, 1.0) < -700.0);
  CHECK(std::isfinite(log_regularized_lower_gamma(200.0, 1.0)));
}

TEST_CASE("chi-square tails") {
  CHECK(chi2_tail(2, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(chi2_tail(4, 2.0) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(chi2_tail(1, 1.0) ==
        doctest::Approx(std::erfc(1.0 / std::sqrt(2.0))).epsilon(1e-13));
  CHECK(chi2_tail(3, 0.0) == 1.0);
  CHECK_THROWS_AS(chi2_tail(0, 1.0), Error);
}

TEST_CASE("marcum q") {
  // Q_{1/2}(a, b) in closed form via the folded normal
  auto closed = [](double a, double b) {
    return 0.5 * (std::erfc((b - a) / std::sqrt(2.0)) +
                  std::erfc((b + a) / std::sqrt(2.0)));
  };
  for (double a : {0.3, 1.0, 2.5}) {
    for (double b : {0.5, 1.5, 4.0}) {
      CHECK(marcum_q(0.5, a, b) == doctest::Approx(closed(a, b)).epsilon(1e-12));
    }
  }
  CHECK(noncentral_chi2_tail(1, 1.0, 2.0) ==
        doctest::Approx(closed(1.0, std::sqrt(2.0))).epsilon(1e-12));
  CHECK(noncentral_chi2_tail(2, 0.0, 2.0) ==
        doctest::Approx(chi2_tail(2, 2.0)).epsilon(1e-13));
}

TEST_CASE("alpha closed forms") {
  // k = 1, n = 1: 2 phi(sqrt u) H_1(sqrt u)
  const double u = 1.0;
  const double expected = 2.0 * std::exp(-0.5) / kSqrt2Pi;
  CHECK(alpha_closed(1, {1}, u) == doctest::Approx(expected).epsilon(1e-13));
  // k = 2, (1, 0), u = 2: e^{-1}
  CHECK(alpha_closed(2, {1, 0}, 2.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // symmetry is exact
  CHECK(alpha_closed(3, {2, 1, 0}, 1.5) == alpha_closed(3, {0, 2, 1}, 1.5));
  // q = 0 reduces to the tail probability
  CHECK(alpha_closed(2, {0, 0}, 2.0) ==
        doctest::Approx(chi2_tail(2, 2.0)).epsilon(1e-14));
}

TEST_CASE("sign correction against the printed sum") {
  // the printed double sum returns the negated coefficient for q >= 1
  for (double u : {0.5, 2.0}) {
    CHECK(alpha_closed_uncorrected(2, {1, 0}, u) ==
          doctest::Approx(-alpha_closed(2, {1, 0}, u)).epsilon(1e-12));
    CHECK(alpha_closed_uncorrected(1, {2}, u) ==
          doctest::Approx(-alpha_closed(1, {2}, u)).epsilon(1e-10));
  }
}

TEST_CASE("monte carlo oracle") {
  Rng rng = Rng::substream(77, 0);
  const auto mc = alpha_mc(2, {1, 1}, 2.0, 400000, rng);
  CHECK(std::abs(alpha_closed(2, {1, 1}, 2.0) - mc.first) < 4.0 * mc.second);
  Rng rng2 = Rng::substream(77, 1);
  const auto sa = alpha_semianalytic(2, 1, 2.0, 200000, rng2);
  CHECK(std::abs(alpha_closed(2, {1, 0}, 2.0) - sa.first) < 4.0 * sa.second);
}

TEST_CASE("compositions") {
  CHECK(enumerate_compositions(2, 2).size() == 3);
  CHECK(enumerate_compositions(3, 3).size() == 10);
  CHECK(enumerate_compositions(0, 2).size() == 1);
}

TEST_CASE("parseval layers against the Laguerre oracle") {
  for (int k : {1, 2, 4}) {
    const double u = (k == 1) ? 1.0 : 2.0;
    const int qm = 30;
    const auto partial = parseval_partial(k, u, qm);
    const auto layers = laguerre_layers(k, u, qm);
    for (int q = 1; q <= qm; ++q) {
      const double layer = partial[q - 1] - (q >= 2 ? partial[q - 2] : 0.0);
      CHECK(layer == doctest::Approx(layers[q]).epsilon(1e-8));
    }
  }
}

TEST_CASE("parseval partial sums behave") {
  const double p = chi2_tail(2, 2.0);
  const double bound = p * (1.0 - p);
  const auto s = parseval_partial(2, 2.0, 60);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i] > 0.0);
    if (i > 0) CHECK(s[i] >= s[i - 1] - 1e-15);
    CHECK(s[i] <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("large order stability") {
  // the scaled coefficient stays finite and tiny at high order
  std::vector<int> idx{40, 40};
  const double v = alpha_scaled(2, idx, 2.0);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 1e-2);
}

TEST_SUITE_END();
