#pragma once

#include <cstdint>

namespace boxvol {

/// Instrumentation totals for one estimator run. Monotone during a run.
struct RunCounters {
  std::uint64_t points_sampled = 0;
  std::uint64_t appears_queries = 0;
  std::uint64_t inclass_queries = 0;
  std::uint64_t node_visits = 0;
  // Query-model totals (KLM baseline, lower-bound harness).
  std::uint64_t vol_queries = 0;
  std::uint64_t sample_queries = 0;
  std::uint64_t contains_queries = 0;

  /// Work measure used by the boosting budget: sampled points plus index
  /// queries.
  std::uint64_t work() const { return points_sampled + appears_queries + inclass_queries; }
  std::uint64_t query_total() const { return vol_queries + sample_queries + contains_queries; }
};

}  // namespace boxvol
