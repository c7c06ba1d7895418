#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "sojourn/spectrum.hpp"
#include "sojourn/temporal.hpp"

namespace sojourn {

struct RosenblattParams {
  double beta;   // in (0, 1/2)
  double sigma;  // sqrt((1/2)(1-2 beta)(1-beta))
  double a;      // sigma / (2 Gamma(beta) sin((1-beta) pi / 2))
};

RosenblattParams rosenblatt_params(double beta);

/// Monte Carlo estimate of the cyclic integral
/// a_j = int_{[0,1]^j} |x_1-x_2|^{-beta} ... |x_j-x_1|^{-beta} dx.
/// Returns (estimate, standard error). a_2 = 1/((1-2 beta)(1-beta)) exactly.
std::pair<double, double> a_j_integral(int j, double beta,
                                       std::int64_t n_samples, Rng& rng);

struct CompositeSpec {
  std::vector<double> coefficients;  // nonzero
  double beta;
};

struct RosenblattOptions {
  double horizon = 2048.0;  // T_R
  double dt = 0.25;
};

/// Standardized Rosenblatt sampler via the time-domain limit construction:
/// draw a unit-variance stationary Gaussian path with covariance g_beta,
/// integrate H_2 of it over [0, T_R] (trapezoid), divide by the exact
/// continuous standard deviation sqrt(2 K(T_R)). Factorization happens once.
class RosenblattSampler {
 public:
  RosenblattSampler(double beta, RosenblattOptions opts = {});

  double draw(Rng& rng) const;

  double beta() const { return beta_; }

 private:
  double beta_;
  TimeGrid grid_;
  double norm_;  // sqrt(2 K(T_R))
  std::unique_ptr<StationarySampler> path_;
};

std::vector<double> sample_rosenblatt(double beta, double horizon, int steps,
                                      int n, Rng& rng);

std::vector<double> sample_composite(const CompositeSpec& spec,
                                     const RosenblattOptions& opts, int n,
                                     Rng& rng);

struct LimitLawResult {
  std::vector<double> samples;       // unit variance by construction
  std::vector<double> coefficients;  // after the final rescale
  double pre_rescale_variance;       // sum of squared raw coefficients
};

/// Samples the long-memory limit law R(u): a composite Rosenblatt variable
/// with parameter beta* whose raw coefficients are
/// (alpha_{2,0,...,0}(u)/2) C_ell(0) / (a(beta*) sqrt(v)) replicated
/// dim(Y_ell) times for each dominant degree and each of the k replicas,
/// rescaled at the end to unit variance (the raw sum of squares is kept as a
/// diagnostic).
LimitLawResult limit_law_sample(const ManifoldSpec& spec,
                                const PowerSpectrum& spectrum, int k, double u,
                                int n, Rng& rng, RosenblattOptions opts = {});

}  // namespace sojourn
