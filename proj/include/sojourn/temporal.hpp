#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "sojourn/rng.hpp"

namespace sojourn {

/// g_beta(tau): (1+|tau|)^{-beta} for beta in (0,1), (1+|tau|)^{-2} at the
/// short-memory point beta = 1.
double g_beta(double tau, double beta);

/// Per-degree temporal covariance C(tau) = c0 * modulation(|tau|) * g_beta(tau).
/// The modulation hook must satisfy modulation(0) = 1 and modulation -> 1.
struct TemporalCovariance {
  double c0 = 1.0;
  double beta = 1.0;
  std::function<double(double)> modulation;  // optional

  double operator()(double tau) const;
};

struct TimeGrid {
  double horizon = 1.0;  // T
  int m = 2;             // equispaced samples t_a = a dt, a = 0..m-1

  double dt() const { return horizon / (m - 1); }
};

TimeGrid make_time_grid(double horizon, double dt_target);

/// K(T) = int_{[0,T]^2} C(t-s)^2 dt ds, via 2 int_0^T (T - tau) C(tau)^2 dtau.
double k_single(const TemporalCovariance& cov, double T);

/// Same double integral for a product of 2q covariances.
double k_multi(std::span<const TemporalCovariance> covs, double T);

/// int_R prod C_i(tau) dtau (requires effective decay > 1).
double integral_product_line(std::span<const TemporalCovariance> covs);

enum class KRegime { PowerLaw, TLogT, Linear };

struct KAsymptote {
  KRegime regime;
  double exponent;  // K(T) ~ constant * T^exponent (times log T at boundary)
  double constant;
};

/// Large-T behavior of the [0,T]^2 double integral of prod C_i by the sign of
/// sum beta_i - 1. For a single covariance squared, pass it twice.
KAsymptote k_asymptote(std::span<const TemporalCovariance> covs);

/// Exact sampler for stationary Gaussian paths on a TimeGrid. Circulant
/// embedding (padded to a power of two) is tried first; a dense Cholesky with
/// relative jitter 1e-10 is the fallback. Factorization happens once at
/// construction and is immutable, so a sampler is shareable across threads.
class StationarySampler {
 public:
  StationarySampler(const TemporalCovariance& cov, const TimeGrid& grid);

  void sample(Rng& rng, std::span<double> out) const;
  std::vector<double> sample(Rng& rng) const;

  int path_length() const { return m_; }
  bool used_circulant() const { return circulant_; }

 private:
  int m_;
  bool circulant_ = false;
  std::vector<double> sqrt_eigs_;  // circulant: sqrt(lambda_j / M)
  Eigen::MatrixXd chol_;           // dense fallback: lower factor
};

}  // namespace sojourn
