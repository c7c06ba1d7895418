#include "sojourn/field.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"

namespace sojourn {

FieldSimulator::FieldSimulator(const ManifoldSpec& spec,
                               const PowerSpectrum& spectrum, PointSet points,
                               TimeGrid grid)
    : spec_(spec),
      spectrum_(spectrum),
      points_(std::move(points)),
      grid_(grid) {
  const int n = points_.size();
  if (n < 1) raise(ErrorKind::Domain, "empty point set");

  int degree_max = 0;
  for (const auto& e : spectrum_.entries()) {
    degree_max = std::max(degree_max, e.degree);
  }
  // pairwise Jacobi values, one pass over the upper triangle
  std::vector<Eigen::MatrixXd> grams(spectrum_.entries().size());
  for (auto& g : grams) g.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double c =
          geodesic_cosine(spec_, points_.coords.row(i).transpose(),
                          points_.coords.row(j).transpose());
      const auto p = jacobi_eval(spec_.alpha, spec_.beta, degree_max,
                                 std::clamp(c, -1.0, 1.0));
      for (std::size_t e = 0; e < spectrum_.entries().size(); ++e) {
        const int ell = spectrum_.entries()[e].degree;
        const double v = kappa(spec_, ell) * p[ell];
        grams[e](i, j) = v;
        grams[e](j, i) = v;
      }
    }
  }
  for (std::size_t e = 0; e < spectrum_.entries().size(); ++e) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(grams[e]);
    if (eig.info() != Eigen::Success) {
      raise(ErrorKind::Factorization, "spatial Gram eigendecomposition failed");
    }
    const auto& vals = eig.eigenvalues();
    const double cut = 1e-10 * std::max(vals.maxCoeff(), 0.0);
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (vals[i] > cut) ++r;
    }
    if (r == 0) raise(ErrorKind::Factorization, "spatial Gram matrix is zero");
    Eigen::MatrixXd factor(n, r);
    int col = 0;
    for (int i = 0; i < n; ++i) {
      if (vals[i] > cut) {
        factor.col(col++) = eig.eigenvectors().col(i) * std::sqrt(vals[i]);
      }
    }
    spatial_factors_.push_back(std::move(factor));
    temporal_.push_back(std::make_unique<StationarySampler>(
        spectrum_.covariance(spectrum_.entries()[e]), grid_));
  }
}

int FieldSimulator::spatial_rank(int degree_index) const {
  return static_cast<int>(spatial_factors_.at(degree_index).cols());
}

FieldSample FieldSimulator::simulate_gaussian(int k, Rng& rng) const {
  if (k < 1) raise(ErrorKind::Domain, "replica count k must be >= 1");
  const int n = points_.size();
  const int m = grid_.m;
  FieldSample sample{spec_, &points_, grid_, {}, {}};
  sample.z.reserve(k);
  std::vector<double> path(m);
  for (int j = 0; j < k; ++j) {
    Eigen::MatrixXd zj = Eigen::MatrixXd::Zero(n, m);
    for (std::size_t e = 0; e < spatial_factors_.size(); ++e) {
      const auto& ls = spatial_factors_[e];
      const int r = static_cast<int>(ls.cols());
      Eigen::MatrixXd paths(r, m);
      for (int row = 0; row < r; ++row) {
        temporal_[e]->sample(rng, path);
        for (int a = 0; a < m; ++a) paths(row, a) = path[a];
      }
      zj.noalias() += ls * paths;
    }
    sample.z.push_back(std::move(zj));
  }
  return sample;
}

FieldSample FieldSimulator::simulate_chi2(int k, Rng& rng) const {
  FieldSample sample = simulate_gaussian(k, rng);
  chi2_transform(sample);
  return sample;
}

void chi2_transform(FieldSample& sample) {
  if (sample.z.empty()) raise(ErrorKind::Domain, "no Gaussian replicas present");
  sample.x = sample.z[0].array().square();
  for (std::size_t j = 1; j < sample.z.size(); ++j) {
    sample.x.array() += sample.z[j].array().square();
  }
}

namespace {

// trapezoid weights on the equispaced grid
double time_weight(const TimeGrid& grid, int a) {
  const double dt = grid.dt();
  return (a == 0 || a == grid.m - 1) ? 0.5 * dt : dt;
}

}  // namespace

SojournEstimate sojourn(const FieldSample& sample, double u,
                        std::uint64_t seed, const std::string& digest) {
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  if (sample.x.size() == 0) raise(ErrorKind::Domain, "chi-square values missing");
  const int k = static_cast<int>(sample.z.size());
  const double tail = chi2_tail(k, u);
  const int n = static_cast<int>(sample.x.rows());
  double acc = 0.0;
  for (int a = 0; a < sample.grid.m; ++a) {
    double space = 0.0;
    for (int i = 0; i < n; ++i) {
      space += sample.points->weights[i] *
               ((sample.x(i, a) >= u ? 1.0 : 0.0) - tail);
    }
    acc += time_weight(sample.grid, a) * space;
  }
  return {u, sample.grid.horizon, acc, k, seed, digest};
}

double chaos2_projection(const FieldSample& sample, double u) {
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  if (sample.z.empty()) raise(ErrorKind::Domain, "no Gaussian replicas present");
  const int k = static_cast<int>(sample.z.size());
  std::vector<int> idx(k, 0);
  idx[0] = 1;
  const double half_alpha = alpha_scaled(k, idx, u) / std::sqrt(2.0);
  const int n = static_cast<int>(sample.z[0].rows());
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    for (int a = 0; a < sample.grid.m; ++a) {
      double space = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = sample.z[j](i, a);
        space += sample.points->weights[i] * (z * z - 1.0);
      }
      acc += time_weight(sample.grid, a) * space;
    }
  }
  return half_alpha * acc;
}

}  // namespace sojourn
