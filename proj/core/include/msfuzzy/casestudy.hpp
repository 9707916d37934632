#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msfuzzy/estimate.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/indices.hpp"

namespace msfuzzy {

struct CaseStudyConfig {
  int k_max = 6;
  double m = 1.5;
  double lambda = 1.0;
  int n_sim = 2000; // homogeneity bootstrap draws
  std::uint64_t seed = 99;
  int jobs = 1; // threads for the homogeneity bootstrap
  EstimationConfig estimation; // std errors are forced on for the two fits
};

struct CaseStudyReport {
  IndexReport indices;
  HomogeneityResult homogeneity;
  MSEstimate ms2;
  MSEstimate ms3;
  std::vector<double> durations2; // 1/(1-p_ii) per state
  std::vector<double> durations3;
  FuzzyResult fuzzy3;
  double rand_raw = 0.0; // MS(3) smoothed inference vs fuzzy k=3
  double rand_ma3 = 0.0; // same, fuzzy on the 3-term moving average
  double rand_ma5 = 0.0;
};

// The full application workflow on one growth series: select_k scan,
// homogeneity bootstrap, MS(2) and MS(3) fits with robust standard errors
// and mean durations, and the Rand agreement between parametric and fuzzy
// classifications (raw and on smoothed series over the common span).
CaseStudyReport run_gdp_case_study(const TimeSeries& y,
                                   const CaseStudyConfig& config = CaseStudyConfig());

// Emits the report bundle (index table, p-values, estimate tables, smoothed
// paths, fuzzy memberships, Rand values, manifest.json) under out_dir.
void write_case_study(const CaseStudyReport& report, const TimeSeries& y,
                      const std::string& out_dir);

// param,estimate,std_error rows followed by loglik/aic/bic, per-state mean
// durations and the convergence flag.
std::string estimate_table_csv(const MSEstimate& fit);

// t,label,y,per-state smoothed probabilities,assigned state.
std::string smoothed_path_csv(const TimeSeries& y, const MSEstimate& fit);

// t,label,y,memberships,assigned state.
std::string membership_csv(const TimeSeries& y, const MembershipMatrix& u);

} // namespace msfuzzy
