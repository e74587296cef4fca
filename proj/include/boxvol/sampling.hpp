#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "boxvol/classify.hpp"
#include "boxvol/counters.hpp"
#include "boxvol/geometry.hpp"
#include "boxvol/range_index.hpp"

namespace boxvol {

/// Seedable random stream. Identical (seed, stream id) pairs reproduce the
/// same variate sequence; distinct stream ids give independent sequences.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in {0, ..., n-1}.
  std::uint64_t next_below(std::uint64_t n);
  /// Exponential with mean 1.
  double next_exponential();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
};

/// Poisson variate. Inter-arrival accumulation below lambda = 30,
/// transformed rejection (PTRD) above. Throws on negative or non-finite
/// lambda.
std::uint64_t poisson(RandomStream& stream, double lambda);

/// Uniform point in the half-open cell.
Point uniform_in_cell(RandomStream& stream, const GridCell& cell);

/// A realized p-sample with provenance.
struct PointSample {
  std::vector<Point> points;
  int class_id = -1;
  double density = 0.0;
};

/// The deduplicated cell cover of class t: all dyadic cells (at the class's
/// exponents) that meet the interior of some member box. |result| <= 3^d |C_t|.
std::vector<GridCell> class_grid(const ClassPartition& p, int t);

/// Draw a p-sample of U_t: cover the class with its cell grid, draw
/// K ~ Pois(p * Vol(grid)) uniform points, keep those inside U_t.
PointSample p_sample_class(RandomStream& stream, int t, double p, const ClassPartition& partition,
                           const ClassIndex& class_index, RunCounters* counters = nullptr);

}  // namespace boxvol
