#include "boxvol/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace boxvol {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t state = seed ^ (stream_id * 0xD1342543DE82EF95ULL + 0x632BE59BD9B4E019ULL);
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state))};
  engine_.seed(seq);
}

std::uint64_t RandomStream::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: n must be positive");
  // Rejection to remove modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double RandomStream::next_exponential() {
  double u;
  do {
    u = next_double();
  } while (u == 0.0);
  return -std::log(u);
}

namespace {

std::uint64_t poisson_small(RandomStream& stream, double lambda) {
  // Count exponential inter-arrivals until the running sum exceeds lambda.
  double sum = 0.0;
  std::uint64_t k = 0;
  for (;;) {
    sum += stream.next_exponential();
    if (sum > lambda) return k;
    ++k;
  }
}

// Hormann's transformed rejection with decomposition (PTRD), valid for
// lambda >= 10; used here for lambda >= 30.
std::uint64_t poisson_ptrd(RandomStream& stream, double mu) {
  const double smu = std::sqrt(mu);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);
  for (;;) {
    double u = stream.next_double() - 0.5;
    double v = stream.next_double();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = k * log_mu - mu - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
  }
}

}  // namespace

std::uint64_t poisson(RandomStream& stream, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("poisson: lambda must be finite and nonnegative");
  }
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) return poisson_small(stream, lambda);
  return poisson_ptrd(stream, lambda);
}

Point uniform_in_cell(RandomStream& stream, const GridCell& cell) {
  std::vector<double> coords(static_cast<size_t>(cell.dim()));
  for (int k = 0; k < cell.dim(); ++k) {
    coords[static_cast<size_t>(k)] = cell.lower(k) + stream.next_double() * cell.side(k);
  }
  return Point(std::move(coords));
}

std::vector<GridCell> class_grid(const ClassPartition& p, int t) {
  if (t < 0 || t >= p.num_classes()) {
    throw std::out_of_range("class_grid: unknown class id");
  }
  const auto& exps = p.classes[static_cast<size_t>(t)].type.exponents;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<GridCell> cells;
  for (const auto& b : p.class_boxes(t)) {
    for (auto& cell : cells_touching(b, exps)) {
      if (seen.insert(cell.index).second) {
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

PointSample p_sample_class(RandomStream& stream, int t, double p, const ClassPartition& partition,
                           const ClassIndex& class_index, RunCounters* counters) {
  if (p < 0.0 || !std::isfinite(p)) {
    throw std::invalid_argument("p_sample_class: invalid density");
  }
  const auto cells = class_grid(partition, t);
  if (cells.empty()) {
    throw std::invalid_argument("p_sample_class: empty class");
  }
  const double cell_volume = cells.front().volume();
  for (const auto& c : cells) {
    if (c.volume() != cell_volume) {
      throw std::logic_error("p_sample_class: grid cells of one class must have equal volume");
    }
  }
  const double grid_volume = cell_volume * static_cast<double>(cells.size());

  PointSample sample;
  sample.class_id = t;
  sample.density = p;
  const std::uint64_t k = poisson(stream, p * grid_volume);
  sample.points.reserve(k);
  for (std::uint64_t j = 0; j < k; ++j) {
    const auto& cell = cells[stream.next_below(cells.size())];
    Point x = uniform_in_cell(stream, cell);
    if (counters) ++counters->points_sampled;
    if (counters) ++counters->inclass_queries;
    const bool keep = class_index.in_class(x, t, counters ? &counters->node_visits : nullptr);
    if (keep) sample.points.push_back(std::move(x));
  }
  return sample;
}

}  // namespace boxvol
