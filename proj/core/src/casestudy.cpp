#include "msfuzzy/casestudy.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "msfuzzy/agreement.hpp"
#include "msfuzzy/filter.hpp"
#include "msfuzzy/format.hpp"
#include "msfuzzy/markov.hpp"

namespace msfuzzy {

namespace {

// Agreement between the two classifications of the window-smoothed series:
// both the parametric fit and the fuzzy clustering are redone on the moving
// average, so the comparison asks whether the procedures concur once the
// abrupt quarter-to-quarter swings are damped.
double smoothed_rand(const TimeSeries& y, int states, int window, double m,
                     const EstimationConfig& est) {
  const TimeSeries ys = moving_average(y, window);
  const MSEstimate fit = fit_ms(ys, states, 0, est);
  const FuzzyResult fz = fuzzy_kmeans(ys, states, m);
  return rand_index(hard_assign(fz.membership), infer_states(ys, fit.spec));
}

std::vector<double> natural_values(const MSModelSpec& spec) {
  std::vector<double> values;
  for (double mu : spec.means()) values.push_back(mu);
  for (double phi : spec.ar_coeffs()) values.push_back(phi);
  values.push_back(spec.sigma());
  for (int i = 0; i < spec.states(); ++i) {
    for (int j = 0; j + 1 < spec.states(); ++j) {
      values.push_back(spec.transition()(i, j));
    }
  }
  return values;
}

} // namespace

CaseStudyReport run_gdp_case_study(const TimeSeries& y,
                                   const CaseStudyConfig& config) {
  IndexReport indices =
      select_k(y, config.k_max, config.m, FuzzyConfig(), config.lambda);
  HomogeneityResult homogeneity =
      homogeneity_test(y, indices, config.n_sim, config.seed, config.m,
                       config.lambda, config.jobs);

  EstimationConfig est = config.estimation;
  est.compute_std_errors = true;
  MSEstimate ms2 = fit_ms(y, 2, 0, est);
  MSEstimate ms3 = fit_ms(y, 3, 0, est);
  std::vector<double> durations2 = state_durations(ms2.spec);
  std::vector<double> durations3 = state_durations(ms3.spec);

  FuzzyResult fuzzy3 = fuzzy_kmeans(y, 3, config.m);
  const StatePath ms3_path = hard_assign(ms3.paths.smoothed());
  const double rand_raw = rand_index(hard_assign(fuzzy3.membership), ms3_path);
  const double rand_ma3 = smoothed_rand(y, 3, 3, config.m, config.estimation);
  const double rand_ma5 = smoothed_rand(y, 3, 5, config.m, config.estimation);

  return CaseStudyReport{std::move(indices),
                         homogeneity,
                         std::move(ms2),
                         std::move(ms3),
                         std::move(durations2),
                         std::move(durations3),
                         std::move(fuzzy3),
                         rand_raw,
                         rand_ma3,
                         rand_ma5};
}

std::string estimate_table_csv(const MSEstimate& fit) {
  std::ostringstream out;
  out << "param,estimate,std_error\n";
  const ParamTransform tf(fit.spec.states(), fit.spec.ar_order());
  const std::vector<std::string> names = tf.natural_names();
  const std::vector<double> values = natural_values(fit.spec);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i] << ',' << format_number(values[i]) << ',';
    if (fit.std_errors && i < fit.std_errors->size()) {
      out << format_number((*fit.std_errors)[i]);
    }
    out << '\n';
  }
  out << "loglik," << format_number(fit.loglik) << ",\n";
  out << "aic," << format_number(fit.aic) << ",\n";
  out << "bic," << format_number(fit.bic) << ",\n";
  if (fit.spec.states() > 1) { // a single state never leaves itself
    const std::vector<double> durations = state_durations(fit.spec);
    for (std::size_t i = 0; i < durations.size(); ++i) {
      out << "duration" << (i + 1) << ',' << format_number(durations[i])
          << ",\n";
    }
  }
  out << "converged," << (fit.converged ? 1 : 0) << ",\n";
  return out.str();
}

std::string smoothed_path_csv(const TimeSeries& y, const MSEstimate& fit) {
  std::ostringstream out;
  const int k = fit.spec.states();
  out << "t,label,y";
  for (int j = 1; j <= k; ++j) out << ",pr_state" << j;
  out << ",state\n";
  const StatePath hard = hard_assign(fit.paths.smoothed());
  for (std::size_t t = 0; t < y.size(); ++t) {
    out << (t + 1) << ',' << (y.has_labels() ? y.labels()[t] : "") << ','
        << format_number(y[t]);
    for (int j = 0; j < k; ++j) {
      out << ','
          << format_number(
                 fit.paths.smoothed()(static_cast<Eigen::Index>(t), j));
    }
    out << ',' << hard[t] << '\n';
  }
  return out.str();
}

std::string membership_csv(const TimeSeries& y, const MembershipMatrix& u) {
  std::ostringstream out;
  const int k = u.states();
  out << "t,label,y";
  for (int j = 1; j <= k; ++j) out << ",u" << j;
  out << ",state\n";
  const StatePath hard = hard_assign(u);
  for (std::size_t t = 0; t < y.size(); ++t) {
    out << (t + 1) << ',' << (y.has_labels() ? y.labels()[t] : "") << ','
        << format_number(y[t]);
    for (int j = 0; j < k; ++j) out << ',' << format_number(u(t, j));
    out << ',' << hard[t] << '\n';
  }
  return out.str();
}

void write_case_study(const CaseStudyReport& report, const TimeSeries& y,
                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    std::ofstream out(dir / "gdp_indices.csv");
    out << index_report_csv(report.indices);
  }
  {
    std::ofstream out(dir / "gdp_homogeneity.csv");
    out << "index,observed_best,p_value\n";
    for (int idx = 0; idx < 6; ++idx) {
      out << kIndexNames[static_cast<std::size_t>(idx)] << ','
          << format_number(
                 report.indices.best_value[static_cast<std::size_t>(idx)])
          << ','
          << format_number(
                 report.homogeneity.p_values[static_cast<std::size_t>(idx)])
          << '\n';
    }
  }
  {
    std::ofstream out(dir / "gdp_estimates_k2.csv");
    out << estimate_table_csv(report.ms2);
  }
  {
    std::ofstream out(dir / "gdp_estimates_k3.csv");
    out << estimate_table_csv(report.ms3);
  }
  {
    std::ofstream out(dir / "gdp_smoothed_k2.csv");
    out << smoothed_path_csv(y, report.ms2);
  }
  {
    std::ofstream out(dir / "gdp_smoothed_k3.csv");
    out << smoothed_path_csv(y, report.ms3);
  }
  {
    std::ofstream out(dir / "gdp_fuzzy_k3.csv");
    out << membership_csv(y, report.fuzzy3.membership);
  }
  {
    std::ofstream out(dir / "gdp_rand.csv");
    out << "comparison,value\n";
    out << "ms3_vs_fuzzy_raw," << format_number(report.rand_raw) << '\n';
    out << "ms3_vs_fuzzy_ma3," << format_number(report.rand_ma3) << '\n';
    out << "ms3_vs_fuzzy_ma5," << format_number(report.rand_ma5) << '\n';
  }
  {
    nlohmann::json manifest;
    manifest["command"] = "gdp";
    manifest["timestamp"] = iso8601_utc_now();
    manifest["n_obs"] = y.size();
    nlohmann::json selected = nlohmann::json::object();
    for (int idx = 0; idx < 6; ++idx) {
      selected[kIndexNames[static_cast<std::size_t>(idx)]] =
          report.indices.selected_k[static_cast<std::size_t>(idx)];
    }
    manifest["selected_k"] = selected;
    manifest["homogeneity_n_sim"] = report.homogeneity.n_sim;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
}

} // namespace msfuzzy
