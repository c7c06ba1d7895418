#include "sojourn/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Cholesky>

#include "fft.hpp"
#include "sojourn/errors.hpp"

namespace sojourn {

double g_beta(double tau, double beta) {
  if (!(beta > 0.0) || beta > 1.0) {
    raise(ErrorKind::Domain, "memory exponent must lie in (0, 1]");
  }
  const double e = (beta == 1.0) ? 2.0 : beta;
  return std::pow(1.0 + std::abs(tau), -e);
}

double TemporalCovariance::operator()(double tau) const {
  double v = c0 * g_beta(tau, beta);
  if (modulation) v *= modulation(std::abs(tau));
  return v;
}

TimeGrid make_time_grid(double horizon, double dt_target) {
  if (!(horizon > 0.0) || !(dt_target > 0.0)) {
    raise(ErrorKind::Domain, "horizon and dt must be positive");
  }
  int m = static_cast<int>(std::lround(horizon / dt_target)) + 1;
  return TimeGrid{horizon, std::max(m, 2)};
}

namespace {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_panel(const F& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole,
                          std::max(std::abs(whole), 1e-300) * tol, 40);
}

// int_0^T f, split into geometrically growing panels so power-law integrands
// stay cheap at large horizons.
template <typename F>
double integrate_0T(const F& f, double T, double rel_tol) {
  double total = 0.0;
  double lo = 0.0, hi = std::min(1.0, T);
  while (lo < T) {
    total += integrate_panel(f, lo, hi, rel_tol);
    lo = hi;
    hi = std::min(2.0 * hi, T);
  }
  return total;
}

double effective_exponent(const TemporalCovariance& c) {
  return c.beta == 1.0 ? 2.0 : c.beta;
}

}  // namespace

double k_multi(std::span<const TemporalCovariance> covs, double T) {
  if (covs.size() < 2 || covs.size() % 2 != 0) {
    raise(ErrorKind::Domain, "k_multi needs an even number (>= 2) of covariances");
  }
  if (!(T > 0.0)) raise(ErrorKind::Domain, "T must be positive");
  auto prod = [&](double tau) {
    double p = 1.0;
    for (const auto& c : covs) p *= c(tau);
    return (T - tau) * p;
  };
  return 2.0 * integrate_0T(prod, T, 1e-9);
}

double k_single(const TemporalCovariance& cov, double T) {
  const TemporalCovariance pair[2] = {cov, cov};
  return k_multi(std::span<const TemporalCovariance>(pair, 2), T);
}

double integral_product_line(std::span<const TemporalCovariance> covs) {
  if (covs.empty()) raise(ErrorKind::Domain, "empty covariance product");
  double s = 0.0, c0prod = 1.0;
  for (const auto& c : covs) {
    s += effective_exponent(c);
    c0prod *= c.c0;
  }
  if (s <= 1.0) {
    raise(ErrorKind::Regime, "covariance product is not integrable on R");
  }
  const double cut = 1e6;
  auto prod = [&](double tau) {
    double p = 1.0;
    for (const auto& c : covs) p *= c(tau);
    return p;
  };
  // modulations are 1 + o(1), so the tail beyond the cut is a pure power law
  double tail = c0prod * std::pow(1.0 + cut, 1.0 - s) / (s - 1.0);
  return 2.0 * (integrate_0T(prod, cut, 1e-9) + tail);
}

KAsymptote k_asymptote(std::span<const TemporalCovariance> covs) {
  if (covs.empty()) raise(ErrorKind::Domain, "empty covariance product");
  double s = 0.0, c0prod = 1.0;
  for (const auto& c : covs) {
    s += c.beta;
    c0prod *= c.c0;
  }
  if (s < 1.0 - 1e-12) {
    return {KRegime::PowerLaw, 2.0 - s,
            2.0 * c0prod / ((1.0 - s) * (2.0 - s))};
  }
  if (s <= 1.0 + 1e-12) {
    return {KRegime::TLogT, 1.0, 2.0 * c0prod};
  }
  return {KRegime::Linear, 1.0, integral_product_line(covs)};
}

StationarySampler::StationarySampler(const TemporalCovariance& cov,
                                     const TimeGrid& grid) {
  if (grid.m < 2) raise(ErrorKind::Domain, "time grid needs m >= 2");
  m_ = grid.m;
  const double dt = grid.dt();
  const std::size_t big = detail::next_pow2(2 * static_cast<std::size_t>(m_ - 1));

  std::vector<std::complex<double>> row(big);
  for (std::size_t j = 0; j < big; ++j) {
    const std::size_t lag = std::min(j, big - j);
    row[j] = cov(static_cast<double>(lag) * dt);
  }
  detail::fft_pow2(row);
  double max_eig = 0.0, min_eig = 0.0;
  for (const auto& e : row) {
    max_eig = std::max(max_eig, e.real());
    min_eig = std::min(min_eig, e.real());
  }
  if (min_eig >= -1e-10 * max_eig) {
    circulant_ = true;
    sqrt_eigs_.resize(big);
    for (std::size_t j = 0; j < big; ++j) {
      sqrt_eigs_[j] = std::sqrt(std::max(row[j].real(), 0.0) /
                                static_cast<double>(big));
    }
    return;
  }

  // dense fallback with relative jitter on the diagonal
  Eigen::MatrixXd sigma(m_, m_);
  for (int a = 0; a < m_; ++a) {
    for (int b = 0; b <= a; ++b) {
      const double v = cov((a - b) * dt);
      sigma(a, b) = v;
      sigma(b, a) = v;
    }
  }
  sigma.diagonal().array() += 1e-10 * cov(0.0);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    raise(ErrorKind::Factorization,
          "stationary covariance not PSD even with jitter");
  }
  chol_ = llt.matrixL();
}

void StationarySampler::sample(Rng& rng, std::span<double> out) const {
  if (static_cast<int>(out.size()) != m_) {
    raise(ErrorKind::Domain, "output span size mismatch");
  }
  if (circulant_) {
    const std::size_t big = sqrt_eigs_.size();
    std::vector<std::complex<double>> eps(big);
    for (std::size_t j = 0; j < big; ++j) {
      eps[j] = sqrt_eigs_[j] * std::complex<double>(rng.normal(), rng.normal());
    }
    detail::fft_pow2(eps);
    for (int a = 0; a < m_; ++a) out[a] = eps[a].real();
    return;
  }
  Eigen::VectorXd g(m_);
  for (int a = 0; a < m_; ++a) g[a] = rng.normal();
  Eigen::VectorXd y = chol_ * g;
  for (int a = 0; a < m_; ++a) out[a] = y[a];
}

std::vector<double> StationarySampler::sample(Rng& rng) const {
  std::vector<double> out(m_);
  sample(rng, out);
  return out;
}

}  // namespace sojourn
