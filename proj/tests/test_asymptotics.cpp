#include <doctest.h>

#include <cmath>
#include <vector>

#include "sojourn/asymptotics.hpp"
#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"

using namespace sojourn;

namespace {

const ManifoldSpec kS2 = space_params(Family::Sphere, 2);

PowerSpectrum lrd_reference() {
  return PowerSpectrum(kS2, {{1, 1.0 / 6.0, 0.3}, {2, 1.0 / 10.0, 0.8}});
}

PowerSpectrum srd_reference() {
  return PowerSpectrum(kS2, {{1, 1.0 / 6.0, 1.0}, {2, 1.0 / 10.0, 1.0}});
}

}  // namespace

TEST_SUITE_BEGIN("asymptotics");

TEST_CASE("spectrum validation") {
  CHECK_THROWS_AS(PowerSpectrum(kS2, {{1, 0.2, 0.3}}), Error);  // 3*0.2 != 1
  CHECK_THROWS_AS(PowerSpectrum(kS2, {{1, 1.0 / 6.0, 0.3}, {1, 1.0 / 6.0, 0.3}}),
                  Error);  // duplicate
  CHECK_THROWS_AS(PowerSpectrum(kS2, {{1, 1.0 / 3.0, 1.5}}), Error);  // beta
  const auto s = lrd_reference();
  CHECK(s.beta_star() == doctest::Approx(0.3));
  CHECK(s.dominant_entries().size() == 1);
  CHECK(s.dominant_entries()[0].degree == 1);
}

TEST_CASE("spatial moment") {
  // pair (l, l') is the orthogonality relation
  for (int l = 0; l <= 5; ++l) {
    for (int lp = 0; lp <= 5; ++lp) {
      std::vector<int> degrees{l, lp};
      const double expected =
          (l == lp) ? jacobi_at_one(kS2, l) * jacobi_at_one(kS2, l) /
                          static_cast<double>(dim_eigenspace(kS2, l))
                    : 0.0;
      CHECK(spatial_moment(kS2, degrees) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
  std::vector<int> zeros{0, 0, 0, 0};
  CHECK(spatial_moment(kS2, zeros) == doctest::Approx(1.0));
  // bound |moment| <= prod P(1)
  std::vector<int> tup{1, 2, 2, 3};
  double bound = 1.0;
  for (int l : tup) bound *= jacobi_at_one(kS2, l);
  CHECK(std::abs(spatial_moment(kS2, tup)) <= bound + 1e-12);
}

TEST_CASE("v_lrd reference value") {
  const auto spectrum = lrd_reference();
  const double alpha2 = std::exp(-1.0);  // alpha_{2,0}(2) at k = 2
  const double expected =
      2.0 * alpha2 * alpha2 / (0.4 * 1.4) * (3.0 / 36.0);
  CHECK(v_lrd(kS2, spectrum, 2, 2.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(v_lrd(kS2, spectrum, 2, 2.0) > 0.0);
  CHECK_THROWS_AS(v_lrd(kS2, srd_reference(), 2, 2.0), Error);
}

TEST_CASE("s2 reference value") {
  const auto spectrum = srd_reference();
  const double alpha2 = std::exp(-1.0);
  const double expected =
      2.0 * (alpha2 * alpha2 / 2.0) * (3.0 / 36.0 + 5.0 / 100.0) * (2.0 / 3.0);
  CHECK(s2(kS2, spectrum, 2, 2.0) == doctest::Approx(expected).epsilon(1e-7));
  // linear in k once the k-dependence of the coefficient is factored out
  const double a2 = alpha_scaled(2, std::vector<int>{1, 0}, 2.0);
  const double a4 = alpha_scaled(4, std::vector<int>{1, 0, 0, 0}, 2.0);
  CHECK(s2(kS2, spectrum, 4, 2.0) ==
        doctest::Approx(2.0 * (a4 * a4) / (a2 * a2) *
                        s2(kS2, spectrum, 2, 2.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(s2(kS2, lrd_reference(), 2, 2.0), Error);
}

TEST_CASE("s2q consistency") {
  const auto spectrum = srd_reference();
  CHECK(s2q(kS2, spectrum, 2, 2.0, 1) ==
        doctest::Approx(s2(kS2, spectrum, 2, 2.0)).epsilon(1e-9));
  CHECK(s2q(kS2, spectrum, 2, 2.0, 2) >= 0.0);
  CHECK(s2q(kS2, spectrum, 2, 2.0, 3) >= 0.0);
  // single-degree spectrum collapses to one tuple
  const PowerSpectrum mono(kS2, {{1, 1.0 / 3.0, 1.0}});
  const TemporalCovariance c{1.0 / 3.0, 1.0, nullptr};
  const std::vector<TemporalCovariance> covs(4, c);
  std::vector<int> degrees{1, 1, 1, 1};
  double layer = 0.0;
  for (const auto& comp : enumerate_compositions(2, 2)) {
    const double a = alpha_scaled(2, comp, 2.0);
    layer += a * a;
  }
  const double expected = layer * std::pow(kappa(kS2, 1), 4) *
                          integral_product_line(covs) *
                          spatial_moment(kS2, degrees);
  CHECK(s2q(kS2, mono, 2, 2.0, 2) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("per-chaos regimes") {
  const auto lrd = lrd_reference();
  const auto p1 = chaos_variance_limit(kS2, lrd, 2, 2.0, 1);
  CHECK(p1.regime == VarianceRegime::Lrd);
  CHECK(p1.exponent == doctest::Approx(1.4));
  // the q = 1 chaos constant equals the total LRD constant
  CHECK(p1.constant == doctest::Approx(v_lrd(kS2, lrd, 2, 2.0)).epsilon(1e-10));

  const auto p2 = chaos_variance_limit(kS2, lrd, 2, 2.0, 2);
  CHECK(p2.regime == VarianceRegime::Srd);  // 2q beta* = 1.2 > 1

  const PowerSpectrum half(kS2, {{1, 1.0 / 3.0, 0.5}});
  const auto pb = chaos_variance_limit(kS2, half, 2, 2.0, 1);
  CHECK(pb.regime == VarianceRegime::Boundary);
  CHECK(pb.constant > 0.0);

  const PowerSpectrum quarter(kS2, {{1, 1.0 / 3.0, 0.25}});
  const auto pq = chaos_variance_limit(kS2, quarter, 2, 2.0, 1);
  CHECK(pq.regime == VarianceRegime::Lrd);
  CHECK(pq.exponent == doctest::Approx(1.5));
}

TEST_CASE("total prediction dispatcher") {
  const auto lrd = lrd_reference();
  const auto pl = predicted_variance(kS2, lrd, 2, 2.0, 3);
  CHECK(pl.regime == VarianceRegime::Lrd);
  CHECK(pl.exponent == doctest::Approx(1.4));
  CHECK(pl.constant == doctest::Approx(v_lrd(kS2, lrd, 2, 2.0)));

  const auto srd = srd_reference();
  const auto ps = predicted_variance(kS2, srd, 2, 2.0, 3);
  CHECK(ps.regime == VarianceRegime::Srd);
  CHECK(ps.constant >= s2(kS2, srd, 2, 2.0));
  CHECK(ps.truncation_ratio > 0.0);
  CHECK(ps.truncation_ratio < 0.5);

  const PowerSpectrum half(kS2, {{1, 1.0 / 3.0, 0.5}});
  CHECK_THROWS_AS(predicted_variance(kS2, half, 2, 2.0, 3), Error);

  // both q = 1 constants are linear in the explicit k factor: doubling k
  // while holding the coefficient fixed doubles them
  std::vector<int> idx2{1, 0}, idx4{1, 0, 0, 0};
  const double a2 = alpha_scaled(2, idx2, 2.0);
  const double a4 = alpha_scaled(4, idx4, 2.0);
  const double scale = (a4 * a4) / (a2 * a2);
  CHECK(v_lrd(kS2, lrd, 4, 2.0) ==
        doctest::Approx(2.0 * scale * v_lrd(kS2, lrd, 2, 2.0)).epsilon(1e-12));
}

TEST_SUITE_END();
