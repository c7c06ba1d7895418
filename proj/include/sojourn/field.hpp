#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sojourn/manifold.hpp"
#include "sojourn/spectrum.hpp"
#include "sojourn/temporal.hpp"

namespace sojourn {

struct FieldSample {
  ManifoldSpec spec;
  const PointSet* points;  // owned by the simulator
  TimeGrid grid;
  std::vector<Eigen::MatrixXd> z;  // k replicas, each n x m
  Eigen::MatrixXd x;               // chi-square values, n x m (after transform)
};

struct SojournEstimate {
  double u;
  double horizon;
  double value;
  int k;
  std::uint64_t seed;
  std::string spectrum_digest;
};

/// Simulator for the invariant Gaussian field on points x grid. Per-degree
/// factorizations (low-rank spatial eigenfactor of the Gram matrix
/// kappa_ell P_ell(cos eps rho_ij), temporal stationary sampler) happen once
/// at construction and are immutable, so one simulator serves all
/// replications and worker threads.
class FieldSimulator {
 public:
  FieldSimulator(const ManifoldSpec& spec, const PowerSpectrum& spectrum,
                 PointSet points, TimeGrid grid);

  /// Draws the k i.i.d. Gaussian replicas; z populated, x empty.
  FieldSample simulate_gaussian(int k, Rng& rng) const;

  /// simulate_gaussian followed by chi2_transform.
  FieldSample simulate_chi2(int k, Rng& rng) const;

  const PointSet& points() const { return points_; }
  const TimeGrid& grid() const { return grid_; }
  const PowerSpectrum& spectrum() const { return spectrum_; }
  const ManifoldSpec& manifold() const { return spec_; }
  int spatial_rank(int degree_index) const;

 private:
  ManifoldSpec spec_;
  PowerSpectrum spectrum_;
  PointSet points_;
  TimeGrid grid_;
  std::vector<Eigen::MatrixXd> spatial_factors_;  // n x r_ell
  std::vector<std::unique_ptr<StationarySampler>> temporal_;
};

/// x[i,a] = sum_j z[j](i,a)^2.
void chi2_transform(FieldSample& sample);

/// Discretized sojourn functional: trapezoid in time, point weights in
/// space, of 1{x >= u} - chi2_tail(k, u).
SojournEstimate sojourn(const FieldSample& sample, double u,
                        std::uint64_t seed = 0,
                        const std::string& digest = "");

/// Discretized second-chaos projection M_T(u)[2]:
/// (alpha_{2,0,...,0}(u)/2) sum_j sum_{a,i} w_a w_i H_2(z[j](i,a)).
double chaos2_projection(const FieldSample& sample, double u);

}  // namespace sojourn
