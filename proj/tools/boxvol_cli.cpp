// boxvol: generate box instances, run union-volume estimators, sweep
// benchmarks, and drive the query-complexity harness.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxvol/estimate.hpp"
#include "boxvol/exact.hpp"
#include "boxvol/instances.hpp"
#include "boxvol/lowerbound.hpp"
#include "boxvol/querymodel.hpp"

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitEstimatorError = 3;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

nlohmann::json report_to_json(const boxvol::EstimateReport& r, bool timing) {
  nlohmann::json j{
      {"schema", "boxvol-report/1"},
      {"algorithm", r.algorithm},
      {"estimate", r.estimate},
      {"epsilon", r.epsilon},
      {"seed", r.seed},
      {"stream_id", r.stream_id},
      {"aborted", r.aborted},
      {"counters",
       {{"points_sampled", r.counters.points_sampled},
        {"appears_queries", r.counters.appears_queries},
        {"inclass_queries", r.counters.inclass_queries},
        {"node_visits", r.counters.node_visits},
        {"vol_queries", r.counters.vol_queries},
        {"sample_queries", r.counters.sample_queries},
        {"contains_queries", r.counters.contains_queries}}},
  };
  if (timing) j["elapsed_sec"] = r.elapsed_sec;
  return j;
}

std::string report_csv_header(bool timing) {
  std::string h =
      "algorithm,estimate,epsilon,seed,stream_id,aborted,points_sampled,appears_queries,"
      "inclass_queries,node_visits,vol_queries,sample_queries,contains_queries";
  if (timing) h += ",elapsed_sec";
  return h + "\n";
}

std::string report_csv_row(const boxvol::EstimateReport& r, bool timing) {
  std::ostringstream row;
  row.precision(17);
  row << r.algorithm << ',' << r.estimate << ',' << r.epsilon << ',' << r.seed << ','
      << r.stream_id << ',' << (r.aborted ? 1 : 0) << ',' << r.counters.points_sampled << ','
      << r.counters.appears_queries << ',' << r.counters.inclass_queries << ','
      << r.counters.node_visits << ',' << r.counters.vol_queries << ','
      << r.counters.sample_queries << ',' << r.counters.contains_queries;
  if (timing) row << ',' << r.elapsed_sec;
  row << '\n';
  return row.str();
}

int run_estimate(const std::string& in_path, const std::string& algo, double eps,
                 std::uint64_t seed, int reps, std::uint64_t budget, const std::string& format,
                 const std::string& out_path, bool timing) {
  std::vector<boxvol::AlignedBox> boxes;
  try {
    boxes = boxvol::read_instance(in_path);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  }

  boxvol::EstimateReport report;
  try {
    if (algo == "exact") {
      report.algorithm = "exact";
      report.estimate = boxvol::exact_volume(boxes);
      report.seed = seed;
    } else if (algo == "crude") {
      const boxvol::KleeEstimator est(boxes);
      boxvol::RandomStream stream(seed);
      report.algorithm = "crude";
      report.seed = seed;
      report.estimate = est.crude(stream, report.counters);
    } else if (algo == "main") {
      const boxvol::KleeEstimator est(boxes);
      report = reps == 1 ? est.estimate_once(eps, seed)
                         : est.estimate_boosted(eps, seed, reps,
                                                budget ? std::optional<std::uint64_t>(budget)
                                                       : std::nullopt);
    } else if (algo == "klm") {
      std::vector<std::unique_ptr<boxvol::QueryObject>> objects;
      objects.reserve(boxes.size());
      for (auto& b : boxes) objects.push_back(boxvol::wrap_box(b));
      boxvol::QueryLedger ledger;
      const auto handles = boxvol::make_handles(objects, ledger);
      boxvol::RandomStream stream(seed);
      report = boxvol::klm_baseline(handles, eps, stream, budget);
    } else {
      std::cerr << "unknown algorithm '" << algo << "'\n";
      return kExitParseError;
    }
    if (report.aborted) {
      std::cerr << "estimator aborted (work budget exhausted)\n";
      return kExitEstimatorError;
    }
  } catch (const std::exception& e) {
    std::cerr << "estimator error: " << e.what() << "\n";
    return kExitEstimatorError;
  }

  if (format == "json") {
    emit(out_path, report_to_json(report, timing).dump(2) + "\n");
  } else {
    emit(out_path, report_csv_header(timing) + report_csv_row(report, timing));
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"union volume estimation for axis-aligned boxes"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a random instance file");
  std::string gen_kind = "uniform";
  int gen_n = 100, gen_d = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "uniform|cubes|dissimilar-classes|lattice");
  gen->add_option("-n,--count", gen_n, "number of boxes")->required();
  gen->add_option("-d,--dim", gen_d, "dimension");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate the union volume of an instance");
  std::string est_in, est_algo = "main", est_format = "json", est_out;
  double est_eps = 0.1;
  std::uint64_t est_seed = 0, est_budget = 0;
  int est_reps = 9;
  bool est_timing = false;
  est->add_option("--in", est_in, "instance file")->required();
  est->add_option("--algo", est_algo, "main|crude|klm|exact");
  est->add_option("--eps", est_eps, "target relative error, in (0,1)");
  est->add_option("--seed", est_seed, "RNG seed");
  est->add_option("--reps", est_reps, "boosting repetitions (odd; 1 = single run)");
  est->add_option("--budget", est_budget, "work/query budget override (0 = default)");
  est->add_option("--format", est_format, "json|csv");
  est->add_option("--out", est_out, "output path (default stdout)");
  est->add_flag("--timing", est_timing, "include wall time in the output");

  // bench
  auto* bench = app.add_subcommand("bench", "sweep estimators over instance sizes");
  std::string bench_ns = "1024,4096", bench_algos = "main,klm", bench_seeds = "1",
              bench_kind = "uniform", bench_out, bench_eps_rule = "fixed";
  int bench_d = 2;
  double bench_eps = 0.1;
  bool bench_oracle = false, bench_timing = false;
  bench->add_option("--n-list", bench_ns, "comma-separated instance sizes");
  bench->add_option("--algos", bench_algos, "comma-separated algorithms (main,crude,klm)");
  bench->add_option("--seeds", bench_seeds, "comma-separated seeds");
  bench->add_option("--kind", bench_kind, "instance generator kind");
  bench->add_option("-d,--dim", bench_d, "dimension");
  bench->add_option("--eps", bench_eps, "epsilon for eps-rule fixed");
  bench->add_option("--eps-rule", bench_eps_rule, "fixed|inv-sqrt-n");
  bench->add_flag("--oracle", bench_oracle, "compute exact volume and relative error");
  bench->add_flag("--timing", bench_timing, "include wall time column");
  bench->add_option("--out", bench_out, "output path (default stdout)");

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "query-complexity harness on hidden instances");
  int lb_n = 8, lb_ell = 0, lb_trials = 10;
  double lb_eps = 0.0;
  std::uint64_t lb_seed = 0;
  std::string lb_algo = "klm", lb_sign = "positive", lb_out;
  lb->add_option("--n", lb_n, "objects per side");
  lb->add_option("--ell", lb_ell, "block count (alternative to --eps)");
  lb->add_option("--eps", lb_eps, "accuracy target; sets ell = floor(1/(36 eps^2))");
  lb->add_option("--algo", lb_algo, "klm|exhaustive-contains");
  lb->add_option("--sign", lb_sign, "positive|negative|random");
  lb->add_option("--trials", lb_trials, "number of trials");
  lb->add_option("--seed", lb_seed, "RNG seed");
  lb->add_option("--out", lb_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto boxes = boxvol::generate_instance(gen_kind, gen_n, gen_d, gen_seed);
      emit(gen_out, boxvol::serialize_instance(boxes));
      return 0;
    }

    if (est->parsed()) {
      return run_estimate(est_in, est_algo, est_eps, est_seed, est_reps, est_budget, est_format,
                          est_out, est_timing);
    }

    if (bench->parsed()) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "kind,n,d,eps,algo,seed,estimate,rel_error,points_sampled,appears_queries,"
             "inclass_queries,node_visits,query_total,work";
      if (bench_timing) csv << ",elapsed_sec";
      csv << '\n';
      for (const auto& n_str : split_list(bench_ns)) {
        const int n = std::stoi(n_str);
        const double eps =
            bench_eps_rule == "inv-sqrt-n" ? 1.0 / std::sqrt(static_cast<double>(n)) : bench_eps;
        for (const auto& seed_str : split_list(bench_seeds)) {
          const auto seed = static_cast<std::uint64_t>(std::stoull(seed_str));
          const auto boxes = boxvol::generate_instance(bench_kind, n, bench_d, seed);
          double oracle = -1.0;
          if (bench_oracle) oracle = boxvol::exact_volume(boxes);
          for (const auto& algo : split_list(bench_algos)) {
            boxvol::EstimateReport report;
            if (algo == "main") {
              const boxvol::KleeEstimator estimator(boxes);
              report = estimator.estimate_once(eps, seed);
            } else if (algo == "crude") {
              const boxvol::KleeEstimator estimator(boxes);
              boxvol::RandomStream stream(seed);
              report.algorithm = "crude";
              report.estimate = estimator.crude(stream, report.counters);
            } else if (algo == "klm") {
              std::vector<std::unique_ptr<boxvol::QueryObject>> objects;
              objects.reserve(boxes.size());
              for (const auto& b : boxes) objects.push_back(boxvol::wrap_box(b));
              boxvol::QueryLedger ledger;
              const auto handles = boxvol::make_handles(objects, ledger);
              boxvol::RandomStream stream(seed);
              report = boxvol::klm_baseline(handles, eps, stream);
            } else {
              std::cerr << "unknown algorithm '" << algo << "'\n";
              return kExitParseError;
            }
            csv << bench_kind << ',' << n << ',' << bench_d << ',' << eps << ',' << algo << ','
                << seed << ',' << report.estimate << ',';
            if (oracle > 0.0) csv << std::abs(report.estimate - oracle) / oracle;
            csv << ',' << report.counters.points_sampled << ',' << report.counters.appears_queries
                << ',' << report.counters.inclass_queries << ',' << report.counters.node_visits
                << ',' << report.counters.query_total() << ',' << report.counters.work();
            if (bench_timing) csv << ',' << report.elapsed_sec;
            csv << '\n';
          }
        }
      }
      emit(bench_out, csv.str());
      return 0;
    }

    if (lb->parsed()) {
      if (lb_ell == 0) {
        if (lb_eps <= 0.0) {
          std::cerr << "lowerbound: provide --ell or --eps\n";
          return kExitParseError;
        }
        lb_ell = boxvol::ell_from_epsilon(lb_eps);
      }
      boxvol::VectorMode mode = boxvol::VectorMode::BoundaryPositive;
      if (lb_sign == "negative") mode = boxvol::VectorMode::BoundaryNegative;
      else if (lb_sign == "random") mode = boxvol::VectorMode::Random;
      else if (lb_sign != "positive") {
        std::cerr << "lowerbound: unknown sign '" << lb_sign << "'\n";
        return kExitParseError;
      }
      std::ostringstream csv;
      csv << "n,ell,algo,queries,bit_accesses,sign_correct\n";
      for (int trial = 0; trial < lb_trials; ++trial) {
        const auto result = boxvol::run_lowerbound_trial(lb_n, lb_ell, lb_algo, mode, lb_seed,
                                                         static_cast<std::uint64_t>(trial));
        csv << result.n << ',' << result.ell << ',' << result.algo << ',' << result.queries << ','
            << result.bit_accesses << ',' << (result.sign_correct ? 1 : 0) << '\n';
      }
      emit(lb_out, csv.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimatorError;
  }
  return 0;
}
