#include "sojourn/asymptotics.hpp"

#include <cmath>
#include <vector>

#include "sojourn/chaos.hpp"
#include "sojourn/errors.hpp"
#include "sojourn/temporal.hpp"

namespace sojourn {

namespace {

double effective_beta(double beta) { return beta == 1.0 ? 2.0 : beta; }

// sum over compositions n_1+...+n_k = q of alpha^2 / prod (2n_j)!
double chaos_layer_weight(int k, double u, int q) {
  double acc = 0.0;
  for (const auto& comp : enumerate_compositions(q, k)) {
    const double a = alpha_scaled(k, comp, u);
    acc += a * a;
  }
  return acc;
}

// sum over 2q-tuples of entries of prod kappa * time_weight(tuple) *
// spatial_moment(degrees); enumerated over sorted tuples with multinomial
// multiplicity.
template <typename TimeWeight>
double tuple_sum(const ManifoldSpec& spec,
                 const std::vector<SpectrumEntry>& entries, int q,
                 const TimeWeight& weight) {
  const int L = 2 * q;
  const int s = static_cast<int>(entries.size());
  std::vector<int> pick(L, 0);  // non-decreasing entry indices
  double acc = 0.0;
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == L) {
      double kprod = 1.0, log_mult = std::lgamma(L + 1.0);
      std::vector<int> degrees(L);
      int run = 1;
      for (int r = 0; r < L; ++r) {
        kprod *= kappa(spec, entries[pick[r]].degree);
        degrees[r] = entries[pick[r]].degree;
        if (r > 0 && pick[r] == pick[r - 1]) {
          ++run;
        } else {
          run = 1;
        }
        if (r + 1 == L || pick[r + 1] != pick[r]) {
          log_mult -= std::lgamma(run + 1.0);
        }
      }
      acc += std::exp(log_mult) * kprod * weight(pick) *
             spatial_moment(spec, degrees);
      return;
    }
    for (int i = lo; i < s; ++i) {
      pick[pos] = i;
      self(self, pos + 1, i);
    }
  };
  rec(rec, 0, 0);
  return acc;
}

}  // namespace

double spatial_moment(const ManifoldSpec& spec, std::span<const int> degrees) {
  int total = 0, degree_max = 0;
  for (int ell : degrees) {
    spec.require_degree(ell);
    total += ell;
    degree_max = std::max(degree_max, ell);
  }
  if (degrees.empty()) raise(ErrorKind::Domain, "empty degree tuple");
  const auto quad = pair_cosine_quadrature(spec, total / 2 + 2);
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const auto p = jacobi_eval(spec.alpha, spec.beta, degree_max, quad.nodes[i]);
    double prod = 1.0;
    for (int ell : degrees) prod *= p[ell];
    acc += quad.weights[i] * prod;
  }
  return acc;
}

double v_lrd(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
             double u) {
  const double bs = spectrum.beta_star();
  if (2.0 * bs >= 1.0) {
    raise(ErrorKind::Regime, "v_lrd requires 2 beta* < 1");
  }
  std::vector<int> idx(k, 0);
  idx[0] = 1;
  const double a2 = alpha_scaled(k, idx, u);  // alpha_{2,0,...}/sqrt(2)
  double sum = 0.0;
  for (const auto& e : spectrum.dominant_entries()) {
    sum += static_cast<double>(dim_eigenspace(spec, e.degree)) * e.c0 * e.c0;
  }
  return 2.0 * k * a2 * a2 * sum / ((1.0 - 2.0 * bs) * (2.0 - 2.0 * bs));
}

double s2(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
          double u) {
  std::vector<int> idx(k, 0);
  idx[0] = 1;
  const double a2 = alpha_scaled(k, idx, u);
  double sum = 0.0;
  for (const auto& e : spectrum.entries()) {
    if (2.0 * effective_beta(e.beta) <= 1.0) {
      raise(ErrorKind::Regime, "s2 integral diverges for 2 beta <= 1");
    }
    const TemporalCovariance c = spectrum.covariance(e);
    const TemporalCovariance pair[2] = {c, c};
    sum += static_cast<double>(dim_eigenspace(spec, e.degree)) *
           integral_product_line(std::span<const TemporalCovariance>(pair, 2));
  }
  return k * a2 * a2 * sum;
}

double s2q(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
           double u, int q) {
  if (q < 1) raise(ErrorKind::Domain, "chaos order q must be >= 1");
  double beta_eff_min = 2.0;
  for (const auto& e : spectrum.entries()) {
    beta_eff_min = std::min(beta_eff_min, effective_beta(e.beta));
  }
  if (2.0 * q * beta_eff_min <= 1.0) {
    raise(ErrorKind::Regime, "s2q integral diverges: 2 q beta* <= 1");
  }
  const auto& entries = spectrum.entries();
  const double layer = chaos_layer_weight(k, u, q);
  const double tuples = tuple_sum(
      spec, entries, q, [&](const std::vector<int>& pick) {
        std::vector<TemporalCovariance> covs;
        covs.reserve(pick.size());
        for (int i : pick) covs.push_back(spectrum.covariance(entries[i]));
        return integral_product_line(covs);
      });
  return layer * tuples;
}

VariancePrediction chaos_variance_limit(const ManifoldSpec& spec,
                                        const PowerSpectrum& spectrum, int k,
                                        double u, int q) {
  if (q < 1) raise(ErrorKind::Domain, "chaos order q must be >= 1");
  const double x = 2.0 * q * spectrum.beta_star();
  if (x > 1.0 + 1e-12) {
    return {VarianceRegime::Srd, 1.0, s2q(spec, spectrum, k, u, q), 0.0, q};
  }
  const auto dominant = spectrum.dominant_entries();
  const double layer = chaos_layer_weight(k, u, q);
  if (x < 1.0 - 1e-12) {
    const double t = tuple_sum(
        spec, dominant, q, [&](const std::vector<int>& pick) {
          double c0prod = 1.0;
          for (int i : pick) c0prod *= dominant[i].c0;
          return 2.0 * c0prod / ((1.0 - x) * (2.0 - x));
        });
    return {VarianceRegime::Lrd, 2.0 - x, layer * t, 0.0, q};
  }
  const double t = tuple_sum(
      spec, dominant, q, [&](const std::vector<int>& pick) {
        double c0prod = 1.0;
        for (int i : pick) c0prod *= dominant[i].c0;
        return 2.0 * c0prod;
      });
  return {VarianceRegime::Boundary, 1.0, layer * t, 0.0, q};
}

VariancePrediction predicted_variance(const ManifoldSpec& spec,
                                      const PowerSpectrum& spectrum, int k,
                                      double u, int q_max) {
  if (q_max < 1) raise(ErrorKind::Domain, "q_max must be >= 1");
  const double bs = spectrum.beta_star();
  if (std::abs(2.0 * bs - 1.0) <= 1e-12) {
    raise(ErrorKind::Regime,
          "total-functional boundary 2 beta* = 1 is not covered");
  }
  if (2.0 * bs < 1.0) {
    return {VarianceRegime::Lrd, 2.0 - 2.0 * bs, v_lrd(spec, spectrum, k, u),
            0.0, 1};
  }
  double total = 0.0, last = 0.0;
  for (int q = 1; q <= q_max; ++q) {
    last = s2q(spec, spectrum, k, u, q);
    total += last;
  }
  return {VarianceRegime::Srd, 1.0, total, last / total, q_max};
}

}  // namespace sojourn
