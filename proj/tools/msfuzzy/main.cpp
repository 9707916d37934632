// Command-line front end: simulation, estimation, clustering, index scans,
// the Monte Carlo harness and the GDP case study, all on plain CSV files.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "msfuzzy/casestudy.hpp"
#include "msfuzzy/catalog.hpp"
#include "msfuzzy/csv.hpp"
#include "msfuzzy/errors.hpp"
#include "msfuzzy/estimate.hpp"
#include "msfuzzy/format.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/indices.hpp"
#include "msfuzzy/markov.hpp"
#include "msfuzzy/montecarlo.hpp"

namespace {

using namespace msfuzzy;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  return out;
}

int run_simulate(const std::string& label, int length, std::uint64_t seed,
                 const std::string& out_path) {
  const DGPCatalogEntry& entry = dgp_by_label(label);
  const auto [y, states] = simulate_ms(entry.spec, static_cast<std::size_t>(length), seed);
  std::ofstream out = open_output(out_path);
  out << "t,y,state\n";
  for (std::size_t t = 0; t < y.size(); ++t) {
    out << (t + 1) << ',' << format_number(y[t]) << ',' << states[t] << '\n';
  }
  std::cerr << entry.label << ": " << y.size() << " observations -> " << out_path
            << '\n';
  return 0;
}

int run_estimate(const std::string& input, const std::string& column, int k,
                 int ar, const std::string& config_path) {
  const TimeSeries y = load_csv(input, column);
  EstimationConfig config = config_path.empty()
                                ? EstimationConfig()
                                : EstimationConfig::from_json_file(config_path);
  config.compute_std_errors = true;
  const MSEstimate fit = fit_ms(y, k, ar, config);
  std::cout << estimate_table_csv(fit);
  if (!fit.converged) {
    std::cerr << "warning: gradient tolerance not met; reporting the best "
                 "point found\n";
  }
  return 0;
}

int run_fuzzy(const std::string& input, const std::string& column, int k,
              double m) {
  const TimeSeries y = load_csv(input, column);
  const FuzzyResult result = fuzzy_kmeans(y, k, m);
  std::cout << membership_csv(y, result.membership);
  return 0;
}

int run_select_k(const std::string& input, const std::string& column, int k_max,
                 double m, double lambda) {
  const TimeSeries y = load_csv(input, column);
  const IndexReport report = select_k(y, k_max, m, FuzzyConfig(), lambda);
  std::cout << index_report_csv(report);
  return 0;
}

int run_homogeneity(const std::string& input, const std::string& column,
                    int n_sim, std::uint64_t seed, int k_max, double m,
                    double lambda) {
  const TimeSeries y = load_csv(input, column);
  const IndexReport observed = select_k(y, k_max, m, FuzzyConfig(), lambda);
  const HomogeneityResult result =
      homogeneity_test(y, observed.best_value, n_sim, seed, k_max, m, lambda);
  std::cout << "index,observed_best,p_value\n";
  for (std::size_t i = 0; i < kIndexNames.size(); ++i) {
    std::cout << kIndexNames[i] << ',' << format_number(observed.best_value[i])
              << ',' << format_number(result.p_values[i]) << '\n';
  }
  return 0;
}

std::vector<std::string> split_labels(const std::string& arg) {
  if (arg == "all") {
    std::vector<std::string> labels;
    for (const DGPCatalogEntry& entry : dgp_catalog()) labels.push_back(entry.label);
    return labels;
  }
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (start <= arg.size()) {
    const std::size_t comma = arg.find(',', start);
    const std::string piece =
        arg.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
    if (!piece.empty()) labels.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (labels.empty()) throw UnknownLabel("no DGP labels given");
  return labels;
}

int run_montecarlo(const std::string& dgps, int reps, int length,
                   std::uint64_t seed, const std::string& out_dir, int jobs,
                   int k_max, int restarts) {
  MonteCarloConfig config;
  config.dgp_labels = split_labels(dgps);
  config.n_reps = reps;
  config.series_length = length;
  config.seed = seed;
  config.jobs = jobs;
  config.k_max = k_max;
  config.estimation.n_restarts = restarts;
  config.estimation.compute_std_errors = false;
  const ExperimentReport report = run_monte_carlo(config);
  write_experiment_report(report, out_dir);
  for (const DGPReport& dgp : report.dgps) {
    std::cerr << dgp.label << ": ok " << dgp.n_ok << '/' << config.n_reps
              << ", MS-vs-true Rand median "
              << format_number(dgp.ms_true.median) << '\n';
  }
  std::cerr << "report written to " << out_dir << '\n';
  return 0;
}

int run_gdp(const std::string& input, const std::string& column,
            const std::string& transform, const std::string& out_dir,
            int n_sim, std::uint64_t seed, int k_max) {
  const Transform tf = transform == "growth" ? Transform::pct_annualized_growth
                                             : Transform::none;
  const TimeSeries y = load_csv(input, column, tf);
  CaseStudyConfig config;
  config.n_sim = n_sim;
  config.seed = seed;
  config.k_max = k_max;
  const CaseStudyReport report = run_gdp_case_study(y, config);
  write_case_study(report, y, out_dir);
  std::cerr << y.size() << " observations; selected k per index:";
  for (std::size_t i = 0; i < kIndexNames.size(); ++i) {
    std::cerr << ' ' << kIndexNames[i] << '=' << report.indices.selected_k[i];
  }
  std::cerr << "\nRand(MS3, fuzzy) raw " << format_number(report.rand_raw)
            << ", MA3 " << format_number(report.rand_ma3) << ", MA5 "
            << format_number(report.rand_ma5) << '\n';
  std::cerr << "report written to " << out_dir << '\n';
  return 0;
}

int run_density(const std::string& label, const std::string& out_path,
                int points, double from, double to, bool has_range) {
  const DGPCatalogEntry& entry = dgp_by_label(label);
  const MSModelSpec& spec = entry.spec;
  double lo = from, hi = to;
  if (!has_range) {
    // Component centres are the state means for p = 0 and the pair levels
    // (mu_j - phi mu_i) / (1 - phi) for p = 1; pad by five sigma.
    double cmin = spec.means()[0], cmax = spec.means()[0];
    for (double mi : spec.means()) {
      for (double mj : spec.means()) {
        const double centre =
            spec.ar_order() == 1
                ? (mj - spec.ar_coeffs()[0] * mi) / (1.0 - spec.ar_coeffs()[0])
                : mj;
        cmin = std::min(cmin, centre);
        cmax = std::max(cmax, centre);
      }
    }
    lo = cmin - 5.0 * spec.sigma();
    hi = cmax + 5.0 * spec.sigma();
  }
  if (!(hi > lo)) throw std::invalid_argument("empty density range");
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * i / (points - 1);
  }
  const std::vector<double> density = ergodic_mixture_density(spec, grid);
  std::ofstream out = open_output(out_path);
  out << "x,density\n";
  for (int i = 0; i < points; ++i) {
    out << format_number(grid[i]) << ',' << format_number(density[i]) << '\n';
  }
  std::cerr << entry.label << ": " << points << " grid points -> " << out_path
            << '\n';
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov-switching state-count detection via fuzzy clustering"};
  app.require_subcommand(1);

  // simulate
  std::string sim_dgp, sim_out;
  int sim_T = 100;
  std::uint64_t sim_seed = 1;
  CLI::App* simulate = app.add_subcommand("simulate", "Draw one series from a catalog DGP");
  simulate->add_option("--dgp", sim_dgp, "catalog label, e.g. MS2--1")->required();
  simulate->add_option("--T", sim_T, "series length")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "RNG seed")->required();
  simulate->add_option("--out", sim_out, "output CSV path")->required();

  // estimate
  std::string est_input, est_column, est_config;
  int est_k = 2, est_ar = 0;
  CLI::App* estimate = app.add_subcommand("estimate", "Fit a Markov-switching model by ML");
  estimate->add_option("--input", est_input, "input CSV")->required();
  estimate->add_option("--column", est_column, "value column name")->required();
  estimate->add_option("--k", est_k, "number of states")->required()->check(CLI::Range(1, 4));
  estimate->add_option("--ar", est_ar, "autoregressive order")->required()->check(CLI::Range(0, 1));
  estimate->add_option("--config", est_config, "estimation settings JSON");

  // fuzzy
  std::string fz_input, fz_column;
  int fz_k = 2;
  double fz_m = 2.0;
  CLI::App* fuzzy = app.add_subcommand("fuzzy", "Fuzzy k-means memberships");
  fuzzy->add_option("--input", fz_input, "input CSV")->required();
  fuzzy->add_option("--column", fz_column, "value column (default: first after dates)");
  fuzzy->add_option("--k", fz_k, "number of clusters")->required()->check(CLI::PositiveNumber);
  fuzzy->add_option("--m", fz_m, "fuzzifier (> 1)");

  // select-k
  std::string sk_input, sk_column;
  int sk_kmax = 6;
  double sk_m = 2.0, sk_lambda = 1.0;
  CLI::App* selectk = app.add_subcommand("select-k", "Scan k = 2..kmax with all six indices");
  selectk->add_option("--input", sk_input, "input CSV")->required();
  selectk->add_option("--column", sk_column, "value column (default: first after dates)");
  selectk->add_option("--kmax", sk_kmax, "largest k scanned")->check(CLI::Range(2, 12));
  selectk->add_option("--m", sk_m, "fuzzifier (> 1)");
  selectk->add_option("--lambda", sk_lambda, "ASWF weight exponent");

  // homogeneity
  std::string hg_input, hg_column;
  int hg_nsim = 2000, hg_kmax = 6;
  double hg_m = 2.0, hg_lambda = 1.0;
  std::uint64_t hg_seed = 0;
  CLI::App* homogeneity = app.add_subcommand("homogeneity", "Bootstrap test against a clusterless null");
  homogeneity->add_option("--input", hg_input, "input CSV")->required();
  homogeneity->add_option("--column", hg_column, "value column (default: first after dates)");
  homogeneity->add_option("--nsim", hg_nsim, "bootstrap draws (>= 100)");
  homogeneity->add_option("--seed", hg_seed, "RNG seed")->required();
  homogeneity->add_option("--kmax", hg_kmax, "largest k scanned")->check(CLI::Range(2, 12));
  homogeneity->add_option("--m", hg_m, "fuzzifier (> 1)");
  homogeneity->add_option("--lambda", hg_lambda, "ASWF weight exponent");

  // montecarlo
  std::string mc_dgps, mc_out;
  int mc_reps = 200, mc_T = 100, mc_jobs = 1, mc_kmax = 6, mc_restarts = 20;
  std::uint64_t mc_seed = 1;
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Replicated simulate/estimate/cluster study");
  montecarlo->add_option("--dgps", mc_dgps, "comma-separated labels or 'all'")->required();
  montecarlo->add_option("--reps", mc_reps, "replications per DGP")->required()->check(CLI::PositiveNumber);
  montecarlo->add_option("--T", mc_T, "series length")->required()->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", mc_seed, "RNG seed")->required();
  montecarlo->add_option("--out", mc_out, "output directory")->required();
  montecarlo->add_option("--jobs", mc_jobs, "worker threads")->check(CLI::PositiveNumber);
  montecarlo->add_option("--kmax", mc_kmax, "largest k scanned")->check(CLI::Range(2, 12));
  montecarlo->add_option("--restarts", mc_restarts, "estimation restarts")->check(CLI::PositiveNumber);

  // gdp
  std::string gdp_input, gdp_column, gdp_transform = "none", gdp_out;
  int gdp_nsim = 2000, gdp_kmax = 6;
  std::uint64_t gdp_seed = 99;
  CLI::App* gdp = app.add_subcommand("gdp", "Full case-study workflow on one series");
  gdp->add_option("--input", gdp_input, "input CSV")->required();
  gdp->add_option("--column", gdp_column, "value column (default: first after dates)");
  gdp->add_option("--transform", gdp_transform, "apply 'growth' for 400 ln(y_t/y_{t-1})")
      ->check(CLI::IsMember({"none", "growth"}));
  gdp->add_option("--out", gdp_out, "output directory")->required();
  gdp->add_option("--nsim", gdp_nsim, "homogeneity bootstrap draws");
  gdp->add_option("--seed", gdp_seed, "homogeneity RNG seed");
  gdp->add_option("--kmax", gdp_kmax, "largest k scanned")->check(CLI::Range(2, 12));

  // density
  std::string dn_dgp, dn_out;
  int dn_points = 1201;
  double dn_from = 0.0, dn_to = 0.0;
  CLI::App* density = app.add_subcommand("density", "Stationary mixture density on a grid");
  density->add_option("--dgp", dn_dgp, "catalog label")->required();
  density->add_option("--out", dn_out, "output CSV path")->required();
  density->add_option("--points", dn_points, "grid size")->check(CLI::Range(2, 1000000));
  CLI::Option* opt_from = density->add_option("--from", dn_from, "grid lower bound");
  CLI::Option* opt_to = density->add_option("--to", dn_to, "grid upper bound");
  opt_from->needs(opt_to);
  opt_to->needs(opt_from);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim_dgp, sim_T, sim_seed, sim_out);
    if (estimate->parsed()) return run_estimate(est_input, est_column, est_k, est_ar, est_config);
    if (fuzzy->parsed()) return run_fuzzy(fz_input, fz_column, fz_k, fz_m);
    if (selectk->parsed()) return run_select_k(sk_input, sk_column, sk_kmax, sk_m, sk_lambda);
    if (homogeneity->parsed()) {
      return run_homogeneity(hg_input, hg_column, hg_nsim, hg_seed, hg_kmax, hg_m, hg_lambda);
    }
    if (montecarlo->parsed()) {
      return run_montecarlo(mc_dgps, mc_reps, mc_T, mc_seed, mc_out, mc_jobs, mc_kmax, mc_restarts);
    }
    if (gdp->parsed()) {
      return run_gdp(gdp_input, gdp_column, gdp_transform, gdp_out, gdp_nsim, gdp_seed, gdp_kmax);
    }
    if (density->parsed()) {
      return run_density(dn_dgp, dn_out, dn_points, dn_from, dn_to,
                         opt_from->count() > 0);
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
