#include "sojourn/manifold.hpp"

#include <algorithm>
#include <cmath>

#include "sojourn/errors.hpp"

namespace sojourn {

std::string family_name(Family f) {
  switch (f) {
    case Family::Sphere: return "sphere";
    case Family::RealProjective: return "real_projective";
    case Family::ComplexProjective: return "complex_projective";
    case Family::QuaternionicProjective: return "quaternionic_projective";
    case Family::CayleyPlane: return "cayley_plane";
  }
  raise(ErrorKind::InvalidSpace, "unknown family enum");
}

Family family_from_name(const std::string& name) {
  if (name == "sphere") return Family::Sphere;
  if (name == "real_projective") return Family::RealProjective;
  if (name == "complex_projective") return Family::ComplexProjective;
  if (name == "quaternionic_projective") return Family::QuaternionicProjective;
  if (name == "cayley_plane") return Family::CayleyPlane;
  raise(ErrorKind::InvalidSpace, "unknown space family '" + name + "'");
}

bool ManifoldSpec::degree_admissible(int ell) const {
  if (ell < 0) return false;
  if (family == Family::RealProjective) return ell % 2 == 0;
  return true;
}

void ManifoldSpec::require_degree(int ell) const {
  if (!degree_admissible(ell)) {
    raise(ErrorKind::DegreeNotInLambda,
          "degree " + std::to_string(ell) + " not admissible on " +
              family_name(family) + " d=" + std::to_string(d));
  }
}

ManifoldSpec space_params(Family family, int d) {
  auto bad = [&](const char* why) {
    raise(ErrorKind::InvalidSpace, family_name(family) + " d=" +
                                       std::to_string(d) + ": " + why);
  };
  switch (family) {
    case Family::Sphere:
      if (d < 2) bad("dimension must be >= 2");
      return {family, d, (d - 2) / 2.0, (d - 2) / 2.0, 1.0};
    case Family::RealProjective:
      if (d < 2) bad("dimension must be >= 2");
      return {family, d, (d - 2) / 2.0, (d - 2) / 2.0, 0.5};
    case Family::ComplexProjective:
      if (d < 4 || d % 2 != 0) bad("dimension must be even and >= 4");
      return {family, d, (d - 2) / 2.0, 0.0, 1.0};
    case Family::QuaternionicProjective:
      if (d < 8 || d % 4 != 0) bad("dimension must be a multiple of 4 and >= 8");
      return {family, d, (d - 2) / 2.0, 1.0, 1.0};
    case Family::CayleyPlane:
      if (d != 16) bad("dimension must be 16");
      return {family, d, 7.0, 3.0, 1.0};
  }
  raise(ErrorKind::InvalidSpace, "unknown family enum");
}

double eigenvalue(const ManifoldSpec& spec, int ell) {
  spec.require_degree(ell);
  return -static_cast<double>(ell) * (ell + spec.alpha + spec.beta + 1.0);
}

long long dim_eigenspace(const ManifoldSpec& spec, int ell) {
  spec.require_degree(ell);
  const double a = spec.alpha, b = spec.beta;
  double logdim = std::log(2 * ell + a + b + 1) + std::lgamma(b + 1) +
                  std::lgamma(ell + a + b + 1) + std::lgamma(ell + a + 1) -
                  std::lgamma(a + 1) - std::lgamma(a + b + 2) -
                  std::lgamma(ell + 1.0) - std::lgamma(ell + b + 1);
  if (ell == 0) logdim = 0.0;  // gamma-ratio collapses to 1
  double dim = std::exp(logdim);
  double rounded = std::round(dim);
  if (std::abs(dim - rounded) > 1e-6 * std::max(1.0, rounded)) {
    raise(ErrorKind::Domain, "eigenspace dimension not integral: " +
                                 std::to_string(dim));
  }
  return static_cast<long long>(rounded);
}

double jacobi_at_one(double alpha, int ell) {
  if (ell < 0) raise(ErrorKind::Domain, "negative degree");
  return std::exp(std::lgamma(ell + alpha + 1) - std::lgamma(alpha + 1) -
                  std::lgamma(ell + 1.0));
}

double jacobi_at_one(const ManifoldSpec& spec, int ell) {
  return jacobi_at_one(spec.alpha, ell);
}

double kappa(const ManifoldSpec& spec, int ell) {
  return static_cast<double>(dim_eigenspace(spec, ell)) /
         jacobi_at_one(spec, ell);
}

std::vector<double> jacobi_eval(double alpha, double beta, int degree_max,
                                double x) {
  if (degree_max < 0) raise(ErrorKind::Domain, "degree_max must be >= 0");
  if (std::abs(x) > 1.0 + 1e-12) {
    raise(ErrorKind::Domain, "jacobi_eval argument outside [-1, 1]");
  }
  std::vector<double> p(degree_max + 1);
  p[0] = 1.0;
  if (degree_max == 0) return p;
  p[1] = 0.5 * (alpha + beta + 2) * x + 0.5 * (alpha - beta);
  for (int n = 2; n <= degree_max; ++n) {
    const double s = 2.0 * n + alpha + beta;
    const double a1 = 2.0 * n * (n + alpha + beta) * (s - 2);
    const double a2 = (s - 1) * (alpha * alpha - beta * beta);
    const double a3 = (s - 1) * s * (s - 2);
    const double a4 = 2.0 * (n + alpha - 1) * (n + beta - 1) * s;
    p[n] = ((a2 + a3 * x) * p[n - 1] - a4 * p[n - 2]) / a1;
  }
  return p;
}

namespace {

// d/dx P_n^{(a,b)}(x) = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}(x)
double jacobi_derivative(double alpha, double beta, int n, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (n + alpha + beta + 1) *
         jacobi_eval(alpha + 1, beta + 1, n - 1, x)[n - 1];
}

// Roots of P_n^{(a,b)} by interlacing: brackets from the degree-(n-1) roots,
// bisection to a sign change, then Newton to 1e-14.
std::vector<double> jacobi_roots(double alpha, double beta, int n) {
  std::vector<double> prev;  // roots of degree j-1
  for (int j = 1; j <= n; ++j) {
    std::vector<double> brackets;
    brackets.push_back(-1.0);
    brackets.insert(brackets.end(), prev.begin(), prev.end());
    brackets.push_back(1.0);
    std::vector<double> roots(j);
    for (int i = 0; i < j; ++i) {
      double lo = brackets[i], hi = brackets[i + 1];
      auto eval = [&](double t) { return jacobi_eval(alpha, beta, j, t)[j]; };
      double flo = eval(lo), fhi = eval(hi);
      // interlacing guarantees opposite signs strictly inside; nudge endpoints
      for (int guard = 0; flo * fhi > 0 && guard < 60; ++guard) {
        lo += (hi - lo) * 1e-3;
        flo = eval(lo);
      }
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = eval(mid);
        if (flo * fm <= 0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
      }
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 50; ++it) {
        double f = eval(x);
        double df = jacobi_derivative(alpha, beta, j, x);
        if (df == 0.0) break;
        double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-14) break;
      }
      roots[i] = x;
    }
    prev = std::move(roots);
  }
  std::sort(prev.begin(), prev.end());
  return prev;
}

// log of h_k = int (1-x)^a (1+x)^b P_k^2 dx
double log_jacobi_norm(double alpha, double beta, int k) {
  return (alpha + beta + 1) * std::log(2.0) -
         std::log(2 * k + alpha + beta + 1) + std::lgamma(k + alpha + 1) +
         std::lgamma(k + beta + 1) - std::lgamma(k + 1.0) -
         std::lgamma(k + alpha + beta + 1);
}

}  // namespace

PairQuadrature pair_cosine_quadrature(const ManifoldSpec& spec, int n_nodes) {
  if (n_nodes < 1) raise(ErrorKind::Domain, "n_nodes must be >= 1");
  const double a = spec.alpha, b = spec.beta;
  PairQuadrature q;
  q.nodes = jacobi_roots(a, b, n_nodes);
  q.weights.resize(n_nodes);

  // Christoffel weights: w_i = 1 / sum_{k<n} p_k(x_i)^2 with p_k orthonormal;
  // dividing by the total mass h_0 gives the normalized measure.
  std::vector<double> half_log_norm(n_nodes);
  for (int k = 0; k < n_nodes; ++k) half_log_norm[k] = 0.5 * log_jacobi_norm(a, b, k);
  const double log_mass = log_jacobi_norm(a, b, 0);
  double total = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    auto p = jacobi_eval(a, b, n_nodes - 1, q.nodes[i]);
    double s = 0.0;
    for (int k = 0; k < n_nodes; ++k) {
      double pk = p[k] * std::exp(-half_log_norm[k]);
      s += pk * pk;
    }
    q.weights[i] = std::exp(-log_mass) / s;
    total += q.weights[i];
  }
  for (auto& w : q.weights) w /= total;
  return q;
}

PointSet sample_points(const ManifoldSpec& spec, int n, Rng& rng) {
  if (spec.family != Family::Sphere && spec.family != Family::RealProjective) {
    raise(ErrorKind::UnsupportedFamily,
          "point sampling supports sphere and real_projective only");
  }
  if (n < 1) raise(ErrorKind::Domain, "n must be >= 1");
  const int ambient = spec.d + 1;
  PointSet ps;
  ps.spec = spec;
  ps.coords.resize(n, ambient);
  ps.weights.assign(n, 1.0 / n);
  for (int i = 0; i < n; ++i) {
    double norm2 = 0.0;
    do {
      for (int j = 0; j < ambient; ++j) ps.coords(i, j) = rng.normal();
      norm2 = ps.coords.row(i).squaredNorm();
    } while (norm2 < 1e-200);
    ps.coords.row(i) /= std::sqrt(norm2);
    if (spec.family == Family::RealProjective) {
      // canonical antipodal representative: first nonzero coordinate >= 0
      for (int j = 0; j < ambient; ++j) {
        if (ps.coords(i, j) != 0.0) {
          if (ps.coords(i, j) < 0.0) ps.coords.row(i) = -ps.coords.row(i);
          break;
        }
      }
    }
  }
  return ps;
}

double geodesic_cosine(const ManifoldSpec& spec,
                       const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (std::abs(x.norm() - 1.0) > 1e-9 || std::abs(y.norm() - 1.0) > 1e-9) {
    raise(ErrorKind::Domain, "geodesic_cosine requires unit vectors");
  }
  double dot = x.dot(y);
  dot = std::clamp(dot, -1.0, 1.0);
  if (spec.family == Family::RealProjective) return std::abs(dot);
  return dot;
}

}  // namespace sojourn
