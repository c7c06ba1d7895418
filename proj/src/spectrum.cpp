#include "sojourn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "sojourn/errors.hpp"

namespace sojourn {

PowerSpectrum::PowerSpectrum(const ManifoldSpec& spec,
                             std::vector<SpectrumEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) raise(ErrorKind::Domain, "empty power spectrum");
  std::sort(entries_.begin(), entries_.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return a.degree < b.degree;
            });
  double total = 0.0;
  beta_star_ = 2.0;
  int prev = -1;
  for (const auto& e : entries_) {
    if (e.degree == prev) raise(ErrorKind::Domain, "duplicate spectrum degree");
    prev = e.degree;
    spec.require_degree(e.degree);
    if (!(e.c0 > 0.0)) raise(ErrorKind::Domain, "spectrum weight must be positive");
    if (!(e.beta > 0.0) || e.beta > 1.0) {
      raise(ErrorKind::Domain, "memory exponent must lie in (0, 1]");
    }
    total += static_cast<double>(dim_eigenspace(spec, e.degree)) * e.c0;
    beta_star_ = std::min(beta_star_, e.beta);
  }
  if (std::abs(total - 1.0) > 1e-10) {
    raise(ErrorKind::Domain,
          "spectrum violates unit variance: sum dim * c0 = " +
              std::to_string(total));
  }
}

std::vector<SpectrumEntry> PowerSpectrum::dominant_entries() const {
  std::vector<SpectrumEntry> out;
  for (const auto& e : entries_) {
    if (e.beta == beta_star_) out.push_back(e);
  }
  return out;
}

std::string PowerSpectrum::digest() const {
  std::string s;
  char buf[96];
  for (const auto& e : entries_) {
    std::snprintf(buf, sizeof(buf), "%d:%.17g:%.17g;", e.degree, e.c0, e.beta);
    s += buf;
  }
  return s;
}

}  // namespace sojourn
