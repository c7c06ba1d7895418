#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace sojourn {

/// Exact D statistic against cdf; p-value from the asymptotic Kolmogorov
/// distribution with the small-sample correction on the effective size.
std::pair<double, double> ks_one_sample(std::span<const double> samples,
                                        const std::function<double(double)>& cdf);

/// Two-sample KS with effective size nm/(n+m).
std::pair<double, double> ks_two_sample(std::span<const double> a,
                                        std::span<const double> b);

double normal_cdf(double x);

struct LoglogFit {
  double slope;
  double intercept;
  double ci95;  // half-width on the slope
};

/// OLS on (log T, log v); inputs must be positive, at least 3 points.
LoglogFit fit_loglog_slope(std::span<const std::pair<double, double>> pairs);

double mean(std::span<const double> v);
double variance(std::span<const double> v);  // unbiased
double skewness(std::span<const double> v);

}  // namespace sojourn
