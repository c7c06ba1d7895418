#pragma once

#include <span>

#include "sojourn/manifold.hpp"
#include "sojourn/spectrum.hpp"

namespace sojourn {

enum class VarianceRegime { Lrd, Boundary, Srd };

/// Predicted large-T behavior: Var ~ constant * T^exponent, with an extra
/// log T factor in the Boundary regime.
struct VariancePrediction {
  VarianceRegime regime;
  double exponent;
  double constant;
  double truncation_ratio = 0.0;  // SRD totals: last s2q term over partial sum
  int q_max = 0;
};

/// int int prod_r P_{ell_r}(cos eps rho(x,y)) dnu(x) dnu(y), exact via
/// Gauss-Jacobi pair quadrature.
double spatial_moment(const ManifoldSpec& spec, std::span<const int> degrees);

/// Second-chaos long-memory limit constant v_{beta*}(u):
/// k alpha_{2,0,...,0}(u)^2 / ((1-2b*)(2-2b*)) * sum_{ell in I*} dim C_ell(0)^2.
double v_lrd(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
             double u);

/// Short-memory second-chaos variance constant
/// k (alpha^2/2) sum_ell dim(Y_ell) int_R C_ell(tau)^2 dtau.
double s2(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
          double u);

/// Short-memory order-2q chaos constant (general tuple sum); q >= 1.
double s2q(const ManifoldSpec& spec, const PowerSpectrum& spectrum, int k,
           double u, int q);

/// Per-chaos variance regime and constant for M_T(u)[2q], by the sign of
/// 2 q beta* - 1.
VariancePrediction chaos_variance_limit(const ManifoldSpec& spec,
                                        const PowerSpectrum& spectrum, int k,
                                        double u, int q);

/// Total-functional prediction: LRD order T^{2-2beta*} with constant v_lrd,
/// or SRD order T with constant sum_{q<=q_max} s2q plus truncation
/// diagnostic. The boundary 2 beta* = 1 is refused.
VariancePrediction predicted_variance(const ManifoldSpec& spec,
                                      const PowerSpectrum& spectrum, int k,
                                      double u, int q_max);

}  // namespace sojourn
