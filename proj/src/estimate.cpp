#include "boxvol/estimate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace boxvol {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double lower_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

std::uint64_t lower_median_u64(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

}  // namespace

PrefixVolumes PrefixVolumes::over(std::span<const AlignedBox> boxes) {
  PrefixVolumes p;
  p.sums.reserve(boxes.size() + 1);
  p.sums.push_back(0.0);
  for (const auto& b : boxes) p.sums.push_back(p.sums.back() + box_volume(b));
  return p;
}

int PrefixVolumes::pick(double u) const {
  const double target = u * total();
  const auto it = std::lower_bound(sums.begin() + 1, sums.end(), target);
  return static_cast<int>(it - sums.begin());
}

KleeEstimator::KleeEstimator(std::span<const AlignedBox> boxes)
    : partition_(partition(boxes)),
      appears_(partition_.boxes),
      classes_(partition_),
      prefix_(PrefixVolumes::over(partition_.boxes)) {}

double KleeEstimator::crude(RandomStream& stream, RunCounters& counters) const {
  const int n = partition_.total();
  const double total = prefix_.total();
  if (total == 0.0) {
    throw std::domain_error("crude: all boxes degenerate");
  }
  const std::uint64_t trials = 40ULL * static_cast<std::uint64_t>(n);
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int i = prefix_.pick(stream.next_double());
    const auto& box = partition_.boxes[static_cast<size_t>(i - 1)];
    std::vector<double> coords(static_cast<size_t>(box.dim()));
    for (int k = 0; k < box.dim(); ++k) {
      coords[static_cast<size_t>(k)] =
          box.lo[static_cast<size_t>(k)] + stream.next_double() * box.side(k);
    }
    const Point x(std::move(coords));
    ++counters.points_sampled;
    ++counters.appears_queries;
    if (!appears_.appears(x, i + 1, &counters.node_visits)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials) * total;
}

EstimateReport KleeEstimator::estimate_once(double epsilon, std::uint64_t seed,
                                            std::uint64_t stream_id,
                                            std::optional<std::uint64_t> work_budget) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("estimate_once: epsilon must be in (0,1)");
  }
  const auto start = Clock::now();
  EstimateReport report;
  report.algorithm = "main";
  report.epsilon = epsilon;
  report.seed = seed;
  report.stream_id = stream_id;

  RandomStream stream(seed, stream_id);
  double crude_value = crude(stream, report.counters);
  if (crude_value == 0.0) {
    // Cannot happen for non-degenerate inputs (the last box always scores);
    // retried once on a derived stream as a guard.
    RandomStream retry(seed, stream_id ^ 0x8000000000000000ULL);
    crude_value = crude(retry, report.counters);
    if (crude_value == 0.0) {
      throw std::runtime_error("estimate_once: crude estimate is zero");
    }
  }

  const auto over_budget = [&] {
    return work_budget.has_value() && report.counters.work() > *work_budget;
  };
  if (over_budget()) {
    report.aborted = true;
    report.elapsed_sec = seconds_since(start);
    return report;
  }

  const double p = 8.0 / (epsilon * epsilon * crude_value);
  std::uint64_t kept = 0;
  for (int t = 0; t < partition_.num_classes(); ++t) {
    const PointSample sample = p_sample_class(stream, t, p, partition_, classes_, &report.counters);
    const int next_label = partition_.boundaries[static_cast<size_t>(t) + 1] + 1;
    for (const Point& x : sample.points) {
      ++report.counters.appears_queries;
      if (!appears_.appears(x, next_label, &report.counters.node_visits)) ++kept;
      if (over_budget()) break;
    }
    if (over_budget()) {
      report.aborted = true;
      report.elapsed_sec = seconds_since(start);
      return report;
    }
  }
  report.estimate = static_cast<double>(kept) / p;
  report.elapsed_sec = seconds_since(start);
  return report;
}

EstimateReport KleeEstimator::estimate_boosted(double epsilon, std::uint64_t seed, int repetitions,
                                               std::optional<std::uint64_t> forced_budget) const {
  if (repetitions < 1 || repetitions % 2 == 0) {
    throw std::invalid_argument("estimate_boosted: repetitions must be odd and >= 1");
  }
  const auto start = Clock::now();
  EstimateReport report;
  report.algorithm = "boosted";
  report.epsilon = epsilon;
  report.seed = seed;

  std::vector<double> estimates;
  std::vector<std::uint64_t> works;
  for (int r = 0; r < repetitions; ++r) {
    std::optional<std::uint64_t> budget = forced_budget;
    if (!budget.has_value() && !works.empty()) {
      budget = 10 * lower_median_u64(works);
    }
    EstimateReport run = estimate_once(epsilon, seed, static_cast<std::uint64_t>(r), budget);
    report.counters.points_sampled += run.counters.points_sampled;
    report.counters.appears_queries += run.counters.appears_queries;
    report.counters.inclass_queries += run.counters.inclass_queries;
    report.counters.node_visits += run.counters.node_visits;
    if (!run.aborted) {
      estimates.push_back(run.estimate);
      works.push_back(run.counters.work());
    }
  }
  if (estimates.empty()) {
    report.aborted = true;
  } else {
    report.estimate = lower_median(std::move(estimates));
  }
  report.elapsed_sec = seconds_since(start);
  return report;
}

EstimateReport klm_baseline(std::span<const QueryHandle> handles, double epsilon,
                            RandomStream& stream, std::uint64_t budget) {
  if (handles.empty()) {
    throw std::invalid_argument("klm_baseline: no objects");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("klm_baseline: epsilon must be in (0,1)");
  }
  const auto start = Clock::now();
  const std::uint64_t n = handles.size();
  if (budget == 0) {
    budget = static_cast<std::uint64_t>(std::ceil(8.0 * static_cast<double>(n) / (epsilon * epsilon)));
  }
  if (budget < 1) {
    throw std::invalid_argument("klm_baseline: budget must be at least 1");
  }

  EstimateReport report;
  report.algorithm = "klm";
  report.epsilon = epsilon;
  report.seed = stream.seed();
  report.stream_id = stream.stream_id();

  const QueryLedger::Totals ledger_start = handles.front().ledger().totals;
  const auto used = [&] { return handles.front().ledger().totals.total() - ledger_start.total(); };

  std::vector<double> sums;
  sums.reserve(n + 1);
  sums.push_back(0.0);
  for (const auto& h : handles) sums.push_back(sums.back() + h.vol());
  const double total_volume = sums.back();
  if (total_volume <= 0.0) {
    throw std::domain_error("klm_baseline: zero total volume");
  }

  double sum_estimates = 0.0;
  std::uint64_t completed = 0;
  while (used() < budget) {
    const double target = stream.next_double() * total_volume;
    const auto it = std::lower_bound(sums.begin() + 1, sums.end(), target);
    const size_t i = static_cast<size_t>(it - sums.begin()) - 1;
    const Point x = handles[i].sample(stream);
    ++report.counters.points_sampled;
    std::uint64_t draws = 0;
    bool hit = false;
    while (used() < budget) {
      const size_t j = stream.next_below(n);
      ++draws;
      if (handles[j].contains(x)) {
        hit = true;
        break;
      }
    }
    if (!hit) break;  // budget ran out mid-trial
    sum_estimates += total_volume * static_cast<double>(draws) / static_cast<double>(n);
    ++completed;
  }
  if (completed == 0) {
    throw std::runtime_error("klm_baseline: no trial completed within the query budget");
  }
  report.estimate = sum_estimates / static_cast<double>(completed);
  const auto& totals = handles.front().ledger().totals;
  report.counters.vol_queries = totals.vol - ledger_start.vol;
  report.counters.sample_queries = totals.sample - ledger_start.sample;
  report.counters.contains_queries = totals.contains - ledger_start.contains;
  report.elapsed_sec = seconds_since(start);
  return report;
}

}  // namespace boxvol
