#pragma once

#include <string>
#include <vector>

#include "sojourn/manifold.hpp"
#include "sojourn/temporal.hpp"

namespace sojourn {

struct SpectrumEntry {
  int degree;
  double c0;    // C_ell(0)
  double beta;  // memory exponent in (0, 1]
};

/// Finitely supported angular power spectrum with per-degree memory
/// exponents. Validated at construction: degrees distinct and admissible,
/// c0 > 0, and sum dim(Y_ell) c0 = 1 within 1e-10 (unit field variance).
class PowerSpectrum {
 public:
  PowerSpectrum(const ManifoldSpec& spec, std::vector<SpectrumEntry> entries);

  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double beta_star() const { return beta_star_; }

  /// Entries attaining the minimal memory exponent.
  std::vector<SpectrumEntry> dominant_entries() const;

  TemporalCovariance covariance(const SpectrumEntry& e) const {
    return TemporalCovariance{e.c0, e.beta, nullptr};
  }

  /// Stable content digest used in provenance metadata.
  std::string digest() const;

 private:
  std::vector<SpectrumEntry> entries_;
  double beta_star_;
};

}  // namespace sojourn
