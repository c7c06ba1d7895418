#include "sojourn/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sojourn/errors.hpp"

namespace sojourn {

namespace {

// P(K > x) for the Kolmogorov distribution, alternating series.
double kolmogorov_tail(double x) {
  if (x < 0.2) return 1.0;
  double s = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    s += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

double ks_p_value(double d, double n_eff) {
  const double sq = std::sqrt(n_eff);
  return kolmogorov_tail((sq + 0.12 + 0.11 / sq) * d);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::pair<double, double> ks_one_sample(
    std::span<const double> samples,
    const std::function<double(double)>& cdf) {
  if (samples.empty()) raise(ErrorKind::Domain, "empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return {d, ks_p_value(d, n)};
}

std::pair<double, double> ks_two_sample(std::span<const double> a,
                                        std::span<const double> b) {
  if (a.empty() || b.empty()) raise(ErrorKind::Domain, "empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx -
                             static_cast<double>(j) / ny));
  }
  const double n_eff = nx * ny / (nx + ny);
  return {d, ks_p_value(d, n_eff)};
}

LoglogFit fit_loglog_slope(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) raise(ErrorKind::Domain, "need at least 3 points");
  const double n = static_cast<double>(pairs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [t, v] : pairs) {
    if (!(t > 0.0) || !(v > 0.0)) {
      raise(ErrorKind::Domain, "log-log fit needs positive values");
    }
    const double lx = std::log(t), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double sxx_c = sxx - sx * sx / n;
  const double slope = (sxy - sx * sy / n) / sxx_c;
  const double intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (const auto& [t, v] : pairs) {
    const double r = std::log(v) - intercept - slope * std::log(t);
    rss += r * r;
  }
  double ci = 0.0;
  if (pairs.size() > 2) {
    const double se = std::sqrt(rss / (n - 2.0) / sxx_c);
    ci = 1.96 * se;
  }
  return {slope, intercept, ci};
}

double mean(std::span<const double> v) {
  if (v.empty()) raise(ErrorKind::Domain, "empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
  if (v.size() < 2) raise(ErrorKind::Domain, "variance needs >= 2 samples");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double skewness(std::span<const double> v) {
  if (v.size() < 3) raise(ErrorKind::Domain, "skewness needs >= 3 samples");
  const double m = mean(v);
  double s2 = 0.0, s3 = 0.0;
  for (double x : v) {
    const double d = x - m;
    s2 += d * d;
    s3 += d * d * d;
  }
  const double n = static_cast<double>(v.size());
  const double sd = std::sqrt(s2 / n);
  return (s3 / n) / (sd * sd * sd);
}

}  // namespace sojourn
