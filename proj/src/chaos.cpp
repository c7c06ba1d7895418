#include "sojourn/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "sojourn/errors.hpp"

namespace sojourn {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
constexpr double kLn2 = 0.69314718055994530941723212145818;

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

// Series expansion of P(a, x), valid and fast for x < a + 1.
double lower_gamma_series(double a, double x, double* log_out = nullptr) {
  double ap = a;
  double sum = 1.0 / a, del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-17) break;
  }
  const double lg = -x + a * std::log(x) - std::lgamma(a);
  if (log_out) *log_out = lg + std::log(sum);
  return std::exp(lg) * sum;
}

// Continued fraction for Q(a, x) = 1 - P(a, x), valid for x >= a + 1.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

std::vector<double> hermite_eval(int q_max, double x) {
  if (q_max < 0) raise(ErrorKind::Domain, "q_max must be >= 0");
  std::vector<double> h(q_max + 1);
  h[0] = 1.0;
  if (q_max == 0) return h;
  h[1] = x;
  for (int q = 1; q < q_max; ++q) h[q + 1] = x * h[q] - q * h[q - 1];
  return h;
}

std::vector<double> hermite_eval_normalized(int q_max, double x) {
  if (q_max < 0) raise(ErrorKind::Domain, "q_max must be >= 0");
  std::vector<double> h(q_max + 1);
  h[0] = 1.0;
  if (q_max == 0) return h;
  h[1] = x;
  for (int q = 1; q < q_max; ++q) {
    h[q + 1] = (x * h[q] - std::sqrt(static_cast<double>(q)) * h[q - 1]) /
               std::sqrt(static_cast<double>(q + 1));
  }
  return h;
}

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    raise(ErrorKind::Domain, "regularized_lower_gamma needs a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double log_regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !(x > 0.0)) {
    raise(ErrorKind::Domain, "log_regularized_lower_gamma needs a, x > 0");
  }
  if (x < a + 1.0) {
    double lg;
    lower_gamma_series(a, x, &lg);
    return lg;
  }
  return std::log(1.0 - upper_gamma_cf(a, x));
}

double chi2_tail(int k, double u) {
  if (k < 1 || u < 0.0) raise(ErrorKind::Domain, "chi2_tail needs k >= 1, u >= 0");
  if (u == 0.0) return 1.0;
  const double a = 0.5 * k, x = 0.5 * u;
  if (x >= a + 1.0) return upper_gamma_cf(a, x);
  return 1.0 - lower_gamma_series(a, x);
}

double marcum_q(double nu, double a, double b) {
  if (!(nu > 0.0) || a < 0.0 || b < 0.0) {
    raise(ErrorKind::Domain, "marcum_q needs nu > 0, a >= 0, b >= 0");
  }
  if (b == 0.0) return 1.0;
  const double h = 0.5 * a * a, x = 0.5 * b * b;
  // canonical series: 1 - sum_l Pois(l; h) P(nu + l, x); the Poisson tail
  // bounds the remainder since P <= 1.
  double log_pois = -h;  // log of Pois(0; h)
  double cum_pois = 0.0, acc = 0.0;
  for (std::int64_t l = 0; l < 1000000; ++l) {
    const double pois = std::exp(log_pois);
    acc += pois * regularized_lower_gamma(nu + l, x);
    cum_pois += pois;
    const double remainder = std::max(0.0, 1.0 - cum_pois);
    if (remainder * 1.0 < 1e-16 && l > static_cast<std::int64_t>(h)) {
      return 1.0 - acc;
    }
    log_pois += std::log(h) - std::log(static_cast<double>(l + 1));
  }
  raise(ErrorKind::Convergence, "marcum_q series did not converge");
}

double noncentral_chi2_tail(int k, double lambda_sq, double u) {
  if (k < 1 || lambda_sq < 0.0 || u < 0.0) {
    raise(ErrorKind::Domain, "noncentral_chi2_tail argument out of range");
  }
  if (lambda_sq == 0.0) return chi2_tail(k, u);
  if (u == 0.0) return 1.0;
  return marcum_q(0.5 * k, std::sqrt(lambda_sq), std::sqrt(u));
}

namespace {

struct AlphaKey {
  int k;
  std::vector<int> sorted_index;
  double u;

  bool operator<(const AlphaKey& o) const {
    return std::tie(k, sorted_index, u) < std::tie(o.k, o.sorted_index, o.u);
  }
};

std::shared_mutex g_alpha_cache_mutex;
std::map<AlphaKey, double> g_alpha_cache;  // stores the scaled coefficient

// Scaled closed form for k >= 2 without the sign correction; returns
// alpha_printed / sqrt(prod (2n_j)!). Signed log-space sum with max-shift.
double alpha_scaled_printed(int k, const std::vector<int>& idx, double u) {
  const double x = 0.5 * u;
  int q = 0;
  double log_pref = 0.0;  // (1/2) sum log (2n_j)!
  for (int n : idx) {
    q += n;
    log_pref += 0.5 * std::lgamma(2.0 * n + 1.0);
  }

  // log P(k/2 + d, u/2) for every reachable d
  std::vector<double> log_gamma_ratio(q + 1);
  for (int d = 0; d <= q; ++d) {
    log_gamma_ratio[d] = log_regularized_lower_gamma(0.5 * k + d, x);
  }

  // odometer over (r_1..r_k), r_j <= n_j
  auto for_each_term = [&](auto&& visit) {
    std::vector<int> r(k, 0);
    while (true) {
      int rs = 0, d = 0;
      double lg = log_pref;
      for (int j = 0; j < k; ++j) {
        rs += r[j];
        d += idx[j] - r[j];
        lg -= r[j] * kLn2 + std::lgamma(r[j] + 1.0);
        lg -= std::lgamma(idx[j] - r[j] + 1.0);
      }
      lg -= d * kLn2;
      lg += log_gamma_ratio[d];
      visit(rs % 2 == 0 ? 1.0 : -1.0, lg);
      int j = 0;
      while (j < k && r[j] == idx[j]) r[j++] = 0;
      if (j == k) break;
      ++r[j];
    }
  };

  double max_log = -1e300;
  for_each_term([&](double, double lg) { max_log = std::max(max_log, lg); });
  double acc = 0.0, comp = 0.0;  // Kahan
  for_each_term([&](double sign, double lg) {
    const double t = sign * std::exp(lg - max_log);
    const double y = t - comp;
    const double s = acc + y;
    comp = (s - acc) - y;
    acc = s;
  });
  return acc * std::exp(max_log);
}

double alpha_scaled_impl(int k, const std::vector<int>& idx, double u) {
  int q = 0;
  for (int n : idx) {
    if (n < 0) raise(ErrorKind::Domain, "negative multi-index entry");
    q += n;
  }
  if (q == 0) return chi2_tail(k, u);
  if (k == 1) {
    const int n = idx[0];
    const double su = std::sqrt(u);
    const double h = hermite_eval_normalized(2 * n - 1, su)[2 * n - 1];
    // alpha / sqrt((2n)!) = 2 phi(sqrt u) h_{2n-1}(sqrt u) / sqrt(2n)
    return 2.0 * gaussian_pdf(su) * h / std::sqrt(2.0 * n);
  }
  // sign correction: the printed double sum is the negative of the true
  // coefficient for q >= 1 (validated against the MC oracle and the k=1
  // reduction; see the coefficient audit study)
  return -alpha_scaled_printed(k, idx, u);
}

}  // namespace

double alpha_scaled(int k, const std::vector<int>& multi_index, double u) {
  if (k < 1 || static_cast<int>(multi_index.size()) != k) {
    raise(ErrorKind::Domain, "multi_index size must equal k");
  }
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  AlphaKey key{k, multi_index, u};
  std::sort(key.sorted_index.begin(), key.sorted_index.end());
  {
    std::shared_lock lock(g_alpha_cache_mutex);
    auto it = g_alpha_cache.find(key);
    if (it != g_alpha_cache.end()) return it->second;
  }
  const double v = alpha_scaled_impl(k, key.sorted_index, u);
  std::unique_lock lock(g_alpha_cache_mutex);
  g_alpha_cache.emplace(key, v);
  return v;
}

double alpha_closed(int k, const std::vector<int>& multi_index, double u) {
  double half_log_fact = 0.0;
  for (int n : multi_index) half_log_fact += 0.5 * std::lgamma(2.0 * n + 1.0);
  return alpha_scaled(k, multi_index, u) * std::exp(half_log_fact);
}

double alpha_closed_uncorrected(int k, const std::vector<int>& multi_index,
                                double u) {
  if (k < 1 || static_cast<int>(multi_index.size()) != k) {
    raise(ErrorKind::Domain, "multi_index size must equal k");
  }
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  std::vector<int> idx = multi_index;
  std::sort(idx.begin(), idx.end());
  double half_log_fact = 0.0;
  for (int n : idx) half_log_fact += 0.5 * std::lgamma(2.0 * n + 1.0);
  return alpha_scaled_printed(k, idx, u) * std::exp(half_log_fact);
}

std::pair<double, double> alpha_mc(int k, const std::vector<int>& multi_index,
                                   double u, std::int64_t n_samples, Rng& rng) {
  if (k < 1 || static_cast<int>(multi_index.size()) != k) {
    raise(ErrorKind::Domain, "multi_index size must equal k");
  }
  if (n_samples < 1) raise(ErrorKind::Domain, "n_samples must be positive");
  int order_max = 0;
  for (int n : multi_index) order_max = std::max(order_max, 2 * n);
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < n_samples; ++s) {
    double r2 = 0.0, prod = 1.0;
    for (int j = 0; j < k; ++j) {
      const double z = rng.normal();
      r2 += z * z;
      if (multi_index[j] > 0) {
        prod *= hermite_eval(2 * multi_index[j], z)[2 * multi_index[j]];
      }
    }
    const double v = (r2 >= u) ? prod : 0.0;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, sum_sq / n_samples - mean * mean);
  return {mean, std::sqrt(var / n_samples)};
}

std::pair<double, double> alpha_semianalytic(int k, int n1, double u,
                                             std::int64_t n_samples, Rng& rng) {
  if (k < 2 || n1 < 1) raise(ErrorKind::Domain, "need k >= 2 and n1 >= 1");
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t s = 0; s < n_samples; ++s) {
    double rest = 0.0;
    for (int j = 1; j < k; ++j) {
      const double z = rng.normal();
      rest += z * z;
    }
    double v = 0.0;
    if (u - rest > 0.0) {
      const double w = std::sqrt(u - rest);
      v = 2.0 * gaussian_pdf(w) * hermite_eval(2 * n1 - 1, w)[2 * n1 - 1];
    }
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / n_samples;
  const double var = std::max(0.0, sum_sq / n_samples - mean * mean);
  return {mean, std::sqrt(var / n_samples)};
}

std::vector<std::vector<int>> enumerate_compositions(int q, int k) {
  if (q < 0 || k < 1) raise(ErrorKind::Domain, "bad composition arguments");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  auto rec = [&](auto&& self, int pos, int rest) -> void {
    if (pos == k - 1) {
      cur[pos] = rest;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rest; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rest - v);
    }
  };
  rec(rec, 0, q);
  return out;
}

std::vector<double> parseval_partial(int k, double u, int q_max) {
  if (k < 1 || k > 8) raise(ErrorKind::Domain, "k must be in 1..8");
  if (!(u > 0.0)) raise(ErrorKind::Domain, "threshold u must be positive");
  if (q_max < 1) raise(ErrorKind::Domain, "q_max must be >= 1");
  std::vector<double> partial(q_max);
  double acc = 0.0;
  // iterate over non-increasing index patterns once and weight by the number
  // of distinct permutations
  std::vector<int> cur(k, 0);
  for (int q = 1; q <= q_max; ++q) {
    double layer = 0.0;
    auto rec = [&](auto&& self, int pos, int rest, int cap) -> void {
      if (pos == k - 1) {
        if (rest > cap) return;
        cur[pos] = rest;
        double a = alpha_scaled(k, cur, u);
        // permutation multiplicity of the sorted pattern
        double log_mult = std::lgamma(k + 1.0);
        int run = 1;
        for (int j = 1; j <= k; ++j) {
          if (j < k && cur[j] == cur[j - 1]) {
            ++run;
          } else {
            log_mult -= std::lgamma(run + 1.0);
            run = 1;
          }
        }
        layer += std::exp(log_mult) * a * a;
        return;
      }
      for (int v = (rest + (k - pos) - 1) / (k - pos); v <= std::min(rest, cap);
           ++v) {
        cur[pos] = v;
        self(self, pos + 1, rest - v, v);
      }
    };
    rec(rec, 0, q, q);
    acc += layer;
    partial[q - 1] = acc;
  }
  return partial;
}

}  // namespace sojourn
