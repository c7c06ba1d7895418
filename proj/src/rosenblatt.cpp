#include "sojourn/rosenblatt.hpp"

#include <cmath>

#include "sojourn/asymptotics.hpp"
#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"

namespace sojourn {

RosenblattParams rosenblatt_params(double beta) {
  if (!(beta > 0.0) || !(beta < 0.5)) {
    raise(ErrorKind::Domain, "Rosenblatt parameter must lie in (0, 1/2)");
  }
  const double sigma = std::sqrt(0.5 * (1.0 - 2.0 * beta) * (1.0 - beta));
  const double a =
      sigma / (2.0 * std::tgamma(beta) * std::sin((1.0 - beta) * M_PI / 2.0));
  return {beta, sigma, a};
}

std::pair<double, double> a_j_integral(int j, double beta,
                                       std::int64_t n_samples, Rng& rng) {
  if (j < 2) raise(ErrorKind::Domain, "a_j needs j >= 2");
  if (!(beta > 0.0) || !(beta < 0.5)) {
    raise(ErrorKind::Domain, "Rosenblatt parameter must lie in (0, 1/2)");
  }
  if (n_samples < 1) raise(ErrorKind::Domain, "n_samples must be positive");
  std::vector<double> x(j);
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < n_samples; ++s) {
    for (int i = 0; i < j; ++i) x[i] = rng.uniform_pos();
    double v = 1.0;
    for (int i = 0; i < j; ++i) {
      const double gap = std::abs(x[i] - x[(i + 1) % j]);
      v *= std::pow(gap, -beta);
    }
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, sum_sq / n_samples - mean * mean);
  return {mean, std::sqrt(var / n_samples)};
}

RosenblattSampler::RosenblattSampler(double beta, RosenblattOptions opts)
    : beta_(beta) {
  rosenblatt_params(beta);  // domain validation
  if (!(opts.horizon > 0.0) || !(opts.dt > 0.0)) {
    raise(ErrorKind::Domain, "horizon and dt must be positive");
  }
  grid_ = make_time_grid(opts.horizon, opts.dt);
  const TemporalCovariance cov{1.0, beta, nullptr};
  norm_ = std::sqrt(2.0 * k_single(cov, opts.horizon));
  path_ = std::make_unique<StationarySampler>(cov, grid_);
}

double RosenblattSampler::draw(Rng& rng) const {
  thread_local std::vector<double> xi;
  xi.resize(grid_.m);
  path_->sample(rng, xi);
  const double dt = grid_.dt();
  double s = 0.0;
  for (int a = 0; a < grid_.m; ++a) {
    const double h2 = xi[a] * xi[a] - 1.0;
    const double w = (a == 0 || a == grid_.m - 1) ? 0.5 * dt : dt;
    s += w * h2;
  }
  return s / norm_;
}

std::vector<double> sample_rosenblatt(double beta, double horizon, int steps,
                                      int n, Rng& rng) {
  if (steps < 2) raise(ErrorKind::Domain, "steps must be >= 2");
  RosenblattOptions opts;
  opts.horizon = horizon;
  opts.dt = horizon / (steps - 1);
  RosenblattSampler sampler(beta, opts);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = sampler.draw(rng);
  return out;
}

std::vector<double> sample_composite(const CompositeSpec& spec,
                                     const RosenblattOptions& opts, int n,
                                     Rng& rng) {
  if (spec.coefficients.empty()) {
    raise(ErrorKind::Domain, "composite spec needs at least one coefficient");
  }
  for (double c : spec.coefficients) {
    if (c == 0.0) raise(ErrorKind::Domain, "composite coefficients must be nonzero");
  }
  RosenblattSampler sampler(spec.beta, opts);
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double v = 0.0;
    for (double c : spec.coefficients) v += c * sampler.draw(rng);
    out[i] = v;
  }
  return out;
}

LimitLawResult limit_law_sample(const ManifoldSpec& spec,
                                const PowerSpectrum& spectrum, int k, double u,
                                int n, Rng& rng, RosenblattOptions opts) {
  const double bs = spectrum.beta_star();
  if (2.0 * bs >= 1.0) {
    raise(ErrorKind::Regime, "limit law requires 2 beta* < 1");
  }
  const auto params = rosenblatt_params(bs);
  const double v = v_lrd(spec, spectrum, k, u);
  std::vector<int> idx(k, 0);
  idx[0] = 1;
  // alpha_{2,0,...,0}(u) / 2! = alpha_scaled / sqrt(2)
  const double half_alpha = alpha_scaled(k, idx, u) / std::sqrt(2.0);

  std::vector<double> coeffs;
  for (int j = 0; j < k; ++j) {
    for (const auto& e : spectrum.dominant_entries()) {
      const double c = half_alpha * e.c0 / (params.a * std::sqrt(v));
      const long long dim = dim_eigenspace(spec, e.degree);
      for (long long m = 0; m < dim; ++m) coeffs.push_back(c);
    }
  }
  double ss = 0.0;
  for (double c : coeffs) ss += c * c;
  LimitLawResult result;
  result.pre_rescale_variance = ss;
  const double rescale = 1.0 / std::sqrt(ss);
  for (double& c : coeffs) c *= rescale;
  result.coefficients = coeffs;

  CompositeSpec comp{coeffs, bs};
  result.samples = sample_composite(comp, opts, n, rng);
  return result;
}

}  // namespace sojourn
