#include "msfuzzy/montecarlo.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "msfuzzy/catalog.hpp"
#include "msfuzzy/errors.hpp"
#include "msfuzzy/format.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/indices.hpp"
#include "msfuzzy/markov.hpp"
#include "msfuzzy/rng.hpp"

namespace msfuzzy {

namespace {

ReplicationRecord run_replication(const MonteCarloConfig& cfg,
                                  const DGPCatalogEntry& entry,
                                  std::uint64_t dgp_pos, int rep) {
  ReplicationRecord rec;
  rec.rep = rep;

  const std::uint64_t sim_seed =
      Rng::mix(cfg.seed, dgp_pos * 2, static_cast<std::uint64_t>(rep));
  auto [y, truth] =
      simulate_ms(entry.spec, static_cast<std::size_t>(cfg.series_length),
                  sim_seed);

  // the selection scan does not depend on estimation and never aborts a rep
  try {
    rec.selected_k = select_k(y, cfg.k_max, cfg.m).selected_k;
  } catch (const Error&) {
    rec.selected_k.fill(0);
  }

  try {
    EstimationConfig est = cfg.estimation;
    est.compute_std_errors = false;
    est.seed = Rng::mix(cfg.seed, dgp_pos * 2 + 1, static_cast<std::uint64_t>(rep));
    const MSEstimate fit =
        fit_ms(y, entry.spec.states(), entry.spec.ar_order(), est);
    rec.converged = fit.converged;

    const StatePath ms_path = hard_assign(fit.paths.smoothed());
    const FuzzyResult fz = fuzzy_kmeans(y, entry.spec.states(), cfg.m);
    const StatePath fz_path = hard_assign(fz.membership);

    rec.rand_ms_true = rand_index(ms_path, truth);
    rec.rand_fuzzy_true = rand_index(fz_path, truth);
    rec.rand_fuzzy_ms = rand_index(fz_path, ms_path);
    rec.ok = true;
  } catch (const Error&) {
    rec.ok = false;
  }
  return rec;
}

} // namespace

ExperimentReport run_monte_carlo(const MonteCarloConfig& config) {
  if (config.dgp_labels.empty()) {
    throw std::invalid_argument("run_monte_carlo: no DGP labels");
  }
  if (config.n_reps < 1) {
    throw std::invalid_argument("run_monte_carlo: n_reps must be >= 1");
  }

  std::vector<const DGPCatalogEntry*> entries;
  for (const auto& label : config.dgp_labels) {
    entries.push_back(&dgp_by_label(label)); // throws UnknownLabel
  }
  for (const auto* entry : entries) {
    const int need = std::max(10 * entry->spec.states(), config.k_max);
    if (config.series_length < need) {
      throw InsufficientData("run_monte_carlo: T=" +
                             std::to_string(config.series_length) +
                             " too short for " + entry->label);
    }
  }

  ExperimentReport report;
  report.config = config;
  const int jobs = std::max(config.jobs, 1);

  for (std::size_t d = 0; d < entries.size(); ++d) {
    const DGPCatalogEntry& entry = *entries[d];
    DGPReport dgp;
    dgp.label = entry.label;
    dgp.true_k = entry.spec.states();
    dgp.histogram.assign(static_cast<std::size_t>(config.k_max - 1), {});
    dgp.replications.resize(static_cast<std::size_t>(config.n_reps));

    if (jobs == 1) {
      for (int r = 0; r < config.n_reps; ++r) {
        dgp.replications[static_cast<std::size_t>(r)] =
            run_replication(config, entry, d, r);
      }
    } else {
      // records land in a pre-sized slot per rep, so scheduling order
      // cannot affect the report
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
          for (int r = next.fetch_add(1); r < config.n_reps;
               r = next.fetch_add(1)) {
            dgp.replications[static_cast<std::size_t>(r)] =
                run_replication(config, entry, d, r);
          }
        });
      }
      for (auto& th : pool) th.join();
    }

    std::vector<double> ms_true, fuzzy_true, fuzzy_ms;
    std::array<int, 6> hits{};
    for (const auto& rec : dgp.replications) {
      if (rec.ok) {
        ++dgp.n_ok;
        if (!rec.converged) ++dgp.n_unconverged;
        ms_true.push_back(rec.rand_ms_true);
        fuzzy_true.push_back(rec.rand_fuzzy_true);
        fuzzy_ms.push_back(rec.rand_fuzzy_ms);
      } else {
        ++dgp.n_failed;
      }
      for (int idx = 0; idx < 6; ++idx) {
        const int sel = rec.selected_k[static_cast<std::size_t>(idx)];
        if (sel == dgp.true_k) ++hits[static_cast<std::size_t>(idx)];
        if (sel >= 2 && sel <= config.k_max) {
          ++dgp.histogram[static_cast<std::size_t>(sel - 2)]
                         [static_cast<std::size_t>(idx)];
        }
      }
    }
    if (dgp.n_ok > 0) {
      dgp.ms_true = rand_summary(ms_true);
      dgp.fuzzy_true = rand_summary(fuzzy_true);
      dgp.fuzzy_ms = rand_summary(fuzzy_ms);
    }
    for (int idx = 0; idx < 6; ++idx) {
      dgp.success_pct[static_cast<std::size_t>(idx)] =
          100.0 * hits[static_cast<std::size_t>(idx)] / config.n_reps;
    }
    report.dgps.push_back(std::move(dgp));
  }
  return report;
}

void write_experiment_report(const ExperimentReport& report,
                             const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    std::ofstream out(dir / "rand_summary.csv");
    out << "dgp,comparison,min,q1,median,q3,max,n\n";
    for (const auto& dgp : report.dgps) {
      const auto row = [&](const char* name, const FiveNumberSummary& s) {
        out << dgp.label << ',' << name << ',' << format_number(s.min) << ','
            << format_number(s.q1) << ',' << format_number(s.median) << ','
            << format_number(s.q3) << ',' << format_number(s.max) << ','
            << dgp.n_ok << '\n';
      };
      row("ms_true", dgp.ms_true);
      row("fuzzy_true", dgp.fuzzy_true);
      row("fuzzy_ms", dgp.fuzzy_ms);
    }
  }
  {
    std::ofstream out(dir / "index_success.csv");
    out << "dgp,index,success_pct\n";
    for (const auto& dgp : report.dgps) {
      for (int idx = 0; idx < 6; ++idx) {
        out << dgp.label << ',' << kIndexNames[static_cast<std::size_t>(idx)]
            << ','
            << format_number(dgp.success_pct[static_cast<std::size_t>(idx)])
            << '\n';
      }
    }
  }
  {
    std::ofstream out(dir / "index_histogram.csv");
    out << "dgp,index,k,count\n";
    for (const auto& dgp : report.dgps) {
      for (int idx = 0; idx < 6; ++idx) {
        for (std::size_t row = 0; row < dgp.histogram.size(); ++row) {
          out << dgp.label << ',' << kIndexNames[static_cast<std::size_t>(idx)]
              << ',' << (row + 2) << ','
              << dgp.histogram[row][static_cast<std::size_t>(idx)] << '\n';
        }
      }
    }
  }
  {
    std::ofstream out(dir / "replications.csv");
    out << "dgp,rep,ok,converged,rand_ms_true,rand_fuzzy_true,rand_fuzzy_ms,"
           "sel_pc,sel_pe,sel_mpc,sel_asw,sel_aswf,sel_xb\n";
    for (const auto& dgp : report.dgps) {
      for (const auto& rec : dgp.replications) {
        out << dgp.label << ',' << rec.rep << ',' << (rec.ok ? 1 : 0) << ','
            << (rec.converged ? 1 : 0) << ','
            << format_number(rec.rand_ms_true) << ','
            << format_number(rec.rand_fuzzy_true) << ','
            << format_number(rec.rand_fuzzy_ms);
        for (int idx = 0; idx < 6; ++idx) {
          out << ',' << rec.selected_k[static_cast<std::size_t>(idx)];
        }
        out << '\n';
      }
    }
  }
  {
    nlohmann::json manifest;
    manifest["command"] = "montecarlo";
    manifest["timestamp"] = iso8601_utc_now();
    manifest["config"] = {
        {"dgps", report.config.dgp_labels},
        {"n_reps", report.config.n_reps},
        {"T", report.config.series_length},
        {"seed", report.config.seed},
        {"jobs", report.config.jobs},
        {"k_max", report.config.k_max},
        {"m", report.config.m},
        {"estimation",
         {{"n_restarts", report.config.estimation.n_restarts},
          {"max_iter", report.config.estimation.max_iter},
          {"grad_tol", report.config.estimation.grad_tol},
          {"jitter_scale", report.config.estimation.jitter_scale},
          {"seed", report.config.estimation.seed}}}};
    nlohmann::json results = nlohmann::json::object();
    for (const auto& dgp : report.dgps) {
      results[dgp.label] = {{"n_ok", dgp.n_ok},
                            {"n_failed", dgp.n_failed},
                            {"n_unconverged", dgp.n_unconverged}};
    }
    manifest["results"] = results;
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
}

} // namespace msfuzzy
