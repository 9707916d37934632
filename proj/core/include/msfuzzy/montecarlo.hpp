#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "msfuzzy/agreement.hpp"
#include "msfuzzy/estimate.hpp"

namespace msfuzzy {

struct MonteCarloConfig {
  std::vector<std::string> dgp_labels;
  int n_reps = 200;
  int series_length = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  int k_max = 6;
  double m = 1.5;
  EstimationConfig estimation;
};

struct ReplicationRecord {
  int rep = 0;
  bool ok = false;        // estimation pipeline completed
  bool converged = false; // gradient tolerance met
  double rand_ms_true = 0.0;
  double rand_fuzzy_true = 0.0;
  double rand_fuzzy_ms = 0.0;
  std::array<int, 6> selected_k{}; // per index; 0 when selection failed
};

struct DGPReport {
  std::string label;
  int true_k = 0;
  int n_ok = 0;
  int n_failed = 0;
  int n_unconverged = 0;
  // five-number summaries over completed replications
  FiveNumberSummary ms_true, fuzzy_true, fuzzy_ms;
  std::array<double, 6> success_pct{}; // % of replications selecting true_k
  // histogram[k - 2][index] over k = 2..k_max
  std::vector<std::array<int, 6>> histogram;
  std::vector<ReplicationRecord> replications;
};

struct ExperimentReport {
  MonteCarloConfig config;
  std::vector<DGPReport> dgps;
};

// Per replication: simulate at the catalog parameters, fit at the true k,
// smoothed-probability inference, fuzzy clustering at the true k, the three
// Rand comparisons, and the select_k scan. Replication streams are derived
// from (seed, dgp position, rep), so reports are identical for any `jobs`.
// Estimation failures are recorded and excluded from Rand summaries.
ExperimentReport run_monte_carlo(const MonteCarloConfig& config);

// Writes rand_summary.csv, index_success.csv, index_histogram.csv,
// replications.csv and manifest.json (the only file with a timestamp)
// under out_dir, creating it if needed.
void write_experiment_report(const ExperimentReport& report,
                             const std::string& out_dir);

} // namespace msfuzzy
