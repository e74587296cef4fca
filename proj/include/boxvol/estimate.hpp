#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxvol/classify.hpp"
#include "boxvol/counters.hpp"
#include "boxvol/querymodel.hpp"
#include "boxvol/range_index.hpp"
#include "boxvol/sampling.hpp"

namespace boxvol {

/// Output of one estimator run.
struct EstimateReport {
  std::string algorithm;
  double estimate = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  RunCounters counters;
  double elapsed_sec = 0.0;
  bool aborted = false;
};

/// Prefix sums S_j = sum_{i<=j} Vol(O_i), j = 0..n.
struct PrefixVolumes {
  std::vector<double> sums;

  static PrefixVolumes over(std::span<const AlignedBox> boxes);
  double total() const { return sums.back(); }
  /// Smallest 1-based i with u <= S_i / S_n.
  int pick(double u) const;
};

/// Shared state for the class-sampling estimator: partition, both stabbing
/// indexes and prefix volumes, built once per input.
class KleeEstimator {
 public:
  explicit KleeEstimator(std::span<const AlignedBox> boxes);

  /// Crude 2-approximation of the union volume: 40n weighted trials against
  /// the appears index.
  double crude(RandomStream& stream, RunCounters& counters) const;

  /// One run of the class-sampling estimator. work_budget (when set) caps
  /// counters.work(); exceeding it aborts the run.
  EstimateReport estimate_once(double epsilon, std::uint64_t seed, std::uint64_t stream_id = 0,
                               std::optional<std::uint64_t> work_budget = std::nullopt) const;

  /// Median of `repetitions` independent runs. Runs after the first are
  /// budgeted at 10x the median work of completed runs; forced_budget
  /// overrides that rule (0 aborts every run).
  EstimateReport estimate_boosted(double epsilon, std::uint64_t seed, int repetitions = 9,
                                  std::optional<std::uint64_t> forced_budget = std::nullopt) const;

  const ClassPartition& class_partition() const { return partition_; }
  const AppearsIndex& appears_index() const { return appears_; }
  const ClassIndex& class_index() const { return classes_; }
  const PrefixVolumes& prefix_volumes() const { return prefix_; }

 private:
  ClassPartition partition_;
  AppearsIndex appears_;
  ClassIndex classes_;
  PrefixVolumes prefix_;
};

/// Query-model baseline: unbiased coverage estimator with geometric
/// stopping. Consumes at most `budget` queries (default ceil(8 n / eps^2))
/// and returns the mean of completed trial estimates.
EstimateReport klm_baseline(std::span<const QueryHandle> handles, double epsilon,
                            RandomStream& stream, std::uint64_t budget = 0);

}  // namespace boxvol
