#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sojourn/rng.hpp"

namespace sojourn {

/// Probabilists' Hermite polynomials H_0..H_qmax at x (H_2(x) = x^2 - 1).
std::vector<double> hermite_eval(int q_max, double x);

/// Normalized variant H_q(x)/sqrt(q!), stable for q up to 1e4.
std::vector<double> hermite_eval_normalized(int q_max, double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x)/Gamma(a).
double regularized_lower_gamma(double a, double x);

/// log P(a, x); stays finite where P underflows.
double log_regularized_lower_gamma(double a, double x);

/// P(chi^2(k) >= u).
double chi2_tail(int k, double u);

/// Generalized Marcum Q_nu(a, b) via the canonical series.
double marcum_q(double nu, double a, double b);

/// P(chi^2(k, lambda_sq) >= u) = Q_{k/2}(sqrt(lambda_sq), sqrt(u)).
double noncentral_chi2_tail(int k, double lambda_sq, double u);

/// Chaos coefficient alpha_{2n_1,...,2n_k}(u) of the chi-square indicator.
/// multi_index holds (n_1,...,n_k); the value is symmetric in the entries.
/// Computed from the closed form (k=1: 2 phi(sqrt u) H_{2n-1}(sqrt u); k>=2:
/// the finite incomplete-gamma double sum, sign-corrected) and cached.
double alpha_closed(int k, const std::vector<int>& multi_index, double u);

/// alpha_{2n_1,...,2n_k}(u) / sqrt((2n_1)! ... (2n_k)!), the overflow-safe
/// form used by Parseval sums and variance formulas.
double alpha_scaled(int k, const std::vector<int>& multi_index, double u);

/// Plain Monte Carlo oracle for E[1{sum N_j^2 >= u} prod H_{2n_j}(N_j)].
std::pair<double, double> alpha_mc(int k, const std::vector<int>& multi_index,
                                   double u, std::int64_t n_samples, Rng& rng);

/// Variance-reduced oracle for alpha_{2n_1,0,...,0}(u), k >= 2: conditions on
/// N_2..N_k and uses the k=1 closed form inside.
std::pair<double, double> alpha_semianalytic(int k, int n1, double u,
                                             std::int64_t n_samples, Rng& rng);

/// As alpha_closed but WITHOUT the sign correction, i.e. the general
/// incomplete-gamma double sum exactly as its source derivation prints it.
/// Kept for audits; it disagrees with the Monte Carlo oracle (and, at k = 1,
/// with the closed form) by a global sign for q >= 1.
double alpha_closed_uncorrected(int k, const std::vector<int>& multi_index,
                                double u);

/// All compositions (n_1,...,n_k) of q into k nonnegative parts.
std::vector<std::vector<int>> enumerate_compositions(int q, int k);

/// Partial sums S_Q, Q = 1..q_max, of sum_q sum_{comps} alpha^2 / prod (2n_j)!.
/// Converges to P(1-P) with P = chi2_tail(k, u).
std::vector<double> parseval_partial(int k, double u, int q_max);

}  // namespace sojourn
