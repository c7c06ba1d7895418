#include <doctest.h>

#include <cmath>

#include "sojourn/errors.hpp"
#include "sojourn/manifold.hpp"

using namespace sojourn;

namespace {

// explicit hypergeometric-sum closed form, independent of the recurrence
double jacobi_reference(double a, double b, int n, double x) {
  double acc = 0.0;
  for (int s = 0; s <= n; ++s) {
    const double c1 = std::tgamma(n + a + 1.0) /
                      (std::tgamma(n - s + 1.0) * std::tgamma(a + s + 1.0));
    const double c2 = std::tgamma(n + b + 1.0) /
                      (std::tgamma(s + 1.0) * std::tgamma(n + b - s + 1.0));
    acc += c1 * c2 * std::pow(0.5 * (x - 1.0), s) * std::pow(0.5 * (x + 1.0), n - s);
  }
  return acc;
}

const ManifoldSpec kAll[] = {
    space_params(Family::Sphere, 2),
    space_params(Family::Sphere, 3),
    space_params(Family::RealProjective, 2),
    space_params(Family::RealProjective, 3),
    space_params(Family::ComplexProjective, 4),
    space_params(Family::QuaternionicProjective, 8),
    space_params(Family::CayleyPlane, 16),
};

}  // namespace

TEST_SUITE_BEGIN("manifold");

TEST_CASE("catalog parameters") {
  const auto s2 = space_params(Family::Sphere, 2);
  CHECK(s2.alpha == doctest::Approx(0.0));
  CHECK(s2.beta == doctest::Approx(0.0));
  CHECK(s2.eps == doctest::Approx(1.0));
  const auto rp3 = space_params(Family::RealProjective, 3);
  CHECK(rp3.alpha == doctest::Approx(0.5));
  CHECK(rp3.beta == doctest::Approx(0.5));
  CHECK(rp3.eps == doctest::Approx(0.5));
  const auto cp4 = space_params(Family::ComplexProjective, 4);
  CHECK(cp4.alpha == doctest::Approx(1.0));
  CHECK(cp4.beta == doctest::Approx(0.0));
  const auto qp8 = space_params(Family::QuaternionicProjective, 8);
  CHECK(qp8.alpha == doctest::Approx(3.0));
  CHECK(qp8.beta == doctest::Approx(1.0));
  const auto cay = space_params(Family::CayleyPlane, 16);
  CHECK(cay.alpha == doctest::Approx(7.0));
  CHECK(cay.beta == doctest::Approx(3.0));

  CHECK_THROWS_AS(space_params(Family::ComplexProjective, 5), Error);
  CHECK_THROWS_AS(space_params(Family::QuaternionicProjective, 10), Error);
  CHECK_THROWS_AS(space_params(Family::CayleyPlane, 8), Error);
  CHECK_THROWS_AS(space_params(Family::Sphere, 1), Error);
}

TEST_CASE("degree admissibility") {
  const auto rp = space_params(Family::RealProjective, 2);
  CHECK(rp.degree_admissible(0));
  CHECK(!rp.degree_admissible(1));
  CHECK(rp.degree_admissible(2));
  CHECK_THROWS_AS(rp.require_degree(3), Error);
  const auto s = space_params(Family::Sphere, 2);
  CHECK(s.degree_admissible(1));
  CHECK(!s.degree_admissible(-1));
}

TEST_CASE("eigenvalues and dimensions") {
  const auto s2 = space_params(Family::Sphere, 2);
  CHECK(eigenvalue(s2, 1) == doctest::Approx(-2.0));
  CHECK(eigenvalue(s2, 3) == doctest::Approx(-12.0));
  CHECK(dim_eigenspace(s2, 3) == 7);
  CHECK(dim_eigenspace(s2, 0) == 1);
  const auto s4 = space_params(Family::Sphere, 4);
  CHECK(dim_eigenspace(s4, 1) == 5);
  CHECK(kappa(s4, 1) == doctest::Approx(2.5).epsilon(1e-14));
  // sphere d: dim = (2l+d-1)(l+d-2)! / (l!(d-1)!)
  const auto s3 = space_params(Family::Sphere, 3);
  CHECK(dim_eigenspace(s3, 2) == 9);
}

TEST_CASE("jacobi recurrence matches closed forms") {
  for (const auto& spec : kAll) {
    for (double x : {-0.9, -0.3, 0.0, 0.41, 0.99, 1.0}) {
      const auto p = jacobi_eval(spec.alpha, spec.beta, 3, x);
      for (int n = 0; n <= 3; ++n) {
        CHECK(p[n] ==
              doctest::Approx(jacobi_reference(spec.alpha, spec.beta, n, x))
                  .epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("value at one") {
  for (const auto& spec : kAll) {
    const auto p = jacobi_eval(spec.alpha, spec.beta, 12, 1.0);
    for (int n = 0; n <= 12; ++n) {
      CHECK(p[n] == doctest::Approx(jacobi_at_one(spec, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("quadrature orthogonality all families") {
  for (const auto& spec : kAll) {
    const int lmax = 20;
    const auto quad = pair_cosine_quadrature(spec, lmax + 2);
    double wsum = 0.0;
    for (double w : quad.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    for (int l = 0; l <= lmax; l += spec.degree_step()) {
      for (int lp = l; lp <= lmax; lp += spec.degree_step()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
          const auto p = jacobi_eval(spec.alpha, spec.beta, lmax, quad.nodes[i]);
          acc += quad.weights[i] * p[l] * p[lp];
        }
        const double expected =
            (l == lp) ? jacobi_at_one(spec, l) * jacobi_at_one(spec, l) /
                            static_cast<double>(dim_eigenspace(spec, l))
                      : 0.0;
        CHECK(std::abs(acc - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("uniform points") {
  const auto s2 = space_params(Family::Sphere, 2);
  Rng rng = Rng::substream(42, 0);
  const auto pts = sample_points(s2, 200, rng);
  CHECK(pts.size() == 200);
  for (int i = 0; i < pts.size(); ++i) {
    CHECK(pts.coords.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pts.weights[i] == doctest::Approx(1.0 / 200.0));
  }
  // determinism
  Rng rng2 = Rng::substream(42, 0);
  const auto pts2 = sample_points(s2, 200, rng2);
  CHECK((pts.coords - pts2.coords).norm() == 0.0);

  const auto rp = space_params(Family::RealProjective, 2);
  Rng rng3 = Rng::substream(42, 1);
  const auto ppts = sample_points(rp, 100, rng3);
  for (int i = 0; i < ppts.size(); ++i) {
    // canonical representative: first nonzero coordinate positive
    int j = 0;
    while (j < ppts.coords.cols() && ppts.coords(i, j) == 0.0) ++j;
    CHECK(ppts.coords(i, j) > 0.0);
  }
}

TEST_CASE("geodesic cosine") {
  const auto s2 = space_params(Family::Sphere, 2);
  Eigen::VectorXd x(3), y(3);
  x << 1, 0, 0;
  y << 0, 1, 0;
  CHECK(geodesic_cosine(s2, x, y) == doctest::Approx(0.0));
  CHECK(geodesic_cosine(s2, x, x) == doctest::Approx(1.0));
  const auto rp = space_params(Family::RealProjective, 2);
  Eigen::VectorXd z = -x;
  CHECK(geodesic_cosine(rp, x, z) == doctest::Approx(1.0));
}

TEST_SUITE_END();
