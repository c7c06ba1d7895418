#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "sojourn/rng.hpp"

namespace sojourn {

enum class Family {
  Sphere,
  RealProjective,
  ComplexProjective,
  QuaternionicProjective,
  CayleyPlane,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// A compact two-point homogeneous space together with the constants that
/// drive its harmonic analysis: the Jacobi parameters (alpha, beta) of the
/// addition formula, the distance scaling eps, and the admissible degree set.
struct ManifoldSpec {
  Family family;
  int d;
  double alpha;
  double beta;
  double eps;  // 1/2 for the real projective spaces, 1 otherwise

  /// Degrees supported by the space (even naturals for RealProjective).
  bool degree_admissible(int ell) const;
  int degree_step() const { return family == Family::RealProjective ? 2 : 1; }

  void require_degree(int ell) const;
};

/// Looks up (alpha, beta, eps, Lambda) for an admissible (family, d) pair.
ManifoldSpec space_params(Family family, int d);

/// Laplace-Beltrami eigenvalue -ell (ell + alpha + beta + 1).
double eigenvalue(const ManifoldSpec& spec, int ell);

/// Dimension of the degree-ell eigenspace (gamma-ratio formula, exact integer).
long long dim_eigenspace(const ManifoldSpec& spec, int ell);

/// P_ell^{(alpha,beta)}(1) = binom(ell + alpha, ell).
double jacobi_at_one(const ManifoldSpec& spec, int ell);
double jacobi_at_one(double alpha, int ell);

/// kappa_ell = dim(Y_ell) / P_ell(1), the addition-formula weight.
double kappa(const ManifoldSpec& spec, int ell);

/// Jacobi polynomial values P_0..P_L at x via the three-term recurrence.
std::vector<double> jacobi_eval(double alpha, double beta, int degree_max, double x);

struct PairQuadrature {
  std::vector<double> nodes;    // in (-1, 1)
  std::vector<double> weights;  // nonnegative, sum to 1
};

/// Gauss-Jacobi rule for the normalized pair-cosine density
/// c (1-u)^alpha (1+u)^beta on [-1,1]. Realizes integrals of F(cos eps rho(x,y))
/// against dnu(x) dnu(y); exact for polynomials of degree <= 2 n_nodes - 1.
PairQuadrature pair_cosine_quadrature(const ManifoldSpec& spec, int n_nodes);

struct PointSet {
  ManifoldSpec spec;
  Eigen::MatrixXd coords;        // n x (d+1), unit rows
  std::vector<double> weights;   // sum to 1

  int size() const { return static_cast<int>(coords.rows()); }
};

/// n i.i.d. uniform points with weights 1/n. Sphere and RealProjective only.
PointSet sample_points(const ManifoldSpec& spec, int n, Rng& rng);

/// cos(eps rho(x, y)), the Jacobi argument: <x,y> on the sphere, |<x,y>| on
/// the real projective space.
double geodesic_cosine(const ManifoldSpec& spec,
                       const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace sojourn
