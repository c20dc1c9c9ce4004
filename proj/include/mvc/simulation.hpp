#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mvc/concentration.hpp"
#include "mvc/hypotheses.hpp"
#include "mvc/hypothesis_test.hpp"
#include "mvc/rng.hpp"

namespace mvc {

// One Monte-Carlo sweep: Gaussian mixture data over a grid of sample sizes,
// the test applied once per requested modification.  Concentrations are
// redrawn for every replication unless fixed_concentrations is set, in which
// case one design per sample size is reused.
struct ScenarioConfig {
  int component_count = 0;
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<int> sample_sizes = {50, 100, 250, 500, 750, 1000, 2000, 5000};
  int replications = 1000;
  double alpha = 0.05;
  HypothesisSpec hypothesis;
  std::vector<Modification> modifications = {Modification::ss, Modification::si,
                                             Modification::ii};
  std::uint64_t seed = 1;
  bool fixed_concentrations = false;
};

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::string& path);

struct ScenarioCell {
  int sample_size = 0;
  Modification modification = Modification::ss;
  long long replications = 0;
  long long valid = 0;
  long long rejections = 0;
  long long bad_covariance = 0;

  double rejection_frequency() const;
  double bad_covariance_frequency() const;
};

struct ScenarioResult {
  std::vector<ScenarioCell> cells;
  const ScenarioCell& cell(int sample_size, Modification mod) const;
};

ConcentrationMatrix generate_concentrations(int obs_count, int component_count, Rng& rng);

struct MixtureSample {
  Sample x;
  std::vector<int> label;
};

MixtureSample sample_mixture(const ConcentrationMatrix& p, const std::vector<double>& means,
                             const std::vector<double>& variances, Rng& rng);

// Deterministic for a given config: every replication derives its own RNG
// stream from (seed, N, replication index), so tallies do not depend on the
// number of worker threads.
ScenarioResult run_scenario(const ScenarioConfig& cfg, int thread_count = 1);

// Columns: N, modification, rejection_freq, bad_cov_freq, R_valid.
std::string result_to_csv(const ScenarioResult& result);

}  // namespace mvc
