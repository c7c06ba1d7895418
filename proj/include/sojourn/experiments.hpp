#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sojourn/manifold.hpp"
#include "sojourn/spectrum.hpp"

namespace sojourn {

enum class Study {
  VarianceScaling,
  DistributionSrd,
  DistributionLrd,
  CoefficientAudit,
  AsymptoteAudit,
};

std::string study_name(Study s);
Study study_from_name(const std::string& name);

struct ExperimentConfig {
  Family family = Family::Sphere;
  int d = 2;
  std::vector<SpectrumEntry> spectrum;
  int k = 1;
  std::vector<double> thresholds;
  std::vector<double> horizons;
  double dt = 0.5;
  int n_points = 400;
  int replications = 100;
  std::uint64_t master_seed = 1;
  Study study = Study::VarianceScaling;
  std::string output_dir = "out";
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// A loaded experiment: runs its study, accumulates a structured result,
/// evaluates acceptance gates, writes artifacts.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  /// Executes the configured study. workers <= 0 means hardware concurrency.
  void run(int workers, bool plots);

  /// Theory-only predictions, no simulation.
  void predict();

  /// Writes result.json plus the study's CSVs (and SVGs when run(plots) was
  /// requested) into dir; empty dir means config.output_dir. The
  /// SOJOURN_OUTPUT_DIR environment variable overrides both.
  void write_outputs(const std::string& dir) const;

  const nlohmann::json& result() const { return result_; }
  bool gates_passed() const;
  const ExperimentConfig& config() const { return config_; }

 private:
  void run_variance_scaling(int workers);
  void run_distribution(int workers);
  void run_coefficient_audit(int workers);
  void run_asymptote_audit();

  ExperimentConfig config_;
  ManifoldSpec spec_;
  nlohmann::json result_;
  bool plots_ = false;
};

/// Deterministic static-partition parallel loop used by all studies.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

}  // namespace sojourn
