#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "boxvol/classify.hpp"
#include "boxvol/exact.hpp"
#include "boxvol/instances.hpp"
#include "boxvol/range_index.hpp"
#include "boxvol/sampling.hpp"
#include "stat_utils.hpp"

using namespace boxvol;

TEST_CASE("streams are reproducible and stream ids decorrelate") {
  RandomStream a(123, 4);
  RandomStream b(123, 4);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomStream c(123, 5);
  int agree = 0;
  RandomStream a2(123, 4);
  for (int i = 0; i < 1000; ++i) agree += (a2.next_u64() == c.next_u64()) ? 1 : 0;
  CHECK(agree == 0);
}

TEST_CASE("next_double lands in [0,1) and next_below in range") {
  RandomStream s(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(s.next_below(7) < 7);
  }
}

TEST_CASE("poisson moments at lambda = 50 (PTRD branch)") {
  RandomStream s(2);
  const int trials = 200000;
  std::vector<double> xs;
  xs.reserve(trials);
  for (int i = 0; i < trials; ++i) xs.push_back(static_cast<double>(poisson(s, 50.0)));
  const double m = statx::mean(xs);
  const double v = statx::sample_variance(xs);
  // Mean and variance are both 50; SE of the mean is sqrt(50/trials) ~ 0.016.
  CHECK(std::abs(m - 50.0) < 5.0 * std::sqrt(50.0 / trials));
  CHECK(std::abs(v - 50.0) < 0.05 * 50.0);
}

TEST_CASE("poisson pmf at lambda = 0.5 (inter-arrival branch)") {
  RandomStream s(3);
  const int trials = 200000;
  std::vector<double> observed(6, 0.0);
  for (int i = 0; i < trials; ++i) {
    const auto k = poisson(s, 0.5);
    observed[std::min<std::uint64_t>(k, 5)] += 1.0;
  }
  std::vector<double> expected(6, 0.0);
  double head = 0.0;
  for (int k = 0; k < 5; ++k) {
    expected[static_cast<size_t>(k)] = trials * statx::poisson_pmf(0.5, k);
    head += expected[static_cast<size_t>(k)];
  }
  expected[5] = trials - head;
  const double stat = statx::chi2_stat(observed, expected);
  CHECK(statx::chi2_sf(stat, 5.0) > 0.001);
}

TEST_CASE("poisson edge cases") {
  RandomStream s(4);
  CHECK(poisson(s, 0.0) == 0);
  CHECK_THROWS_AS(poisson(s, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(poisson(s, std::nan("")), std::invalid_argument);
}

TEST_CASE("uniform_in_cell stays inside the half-open cell") {
  RandomStream s(5);
  const GridCell cell{{-3, 2}, {-1, 1}};
  for (int i = 0; i < 5000; ++i) {
    const Point p = uniform_in_cell(s, cell);
    for (int k = 0; k < 2; ++k) {
      CHECK(p[k] >= cell.lower(k));
      CHECK(p[k] < cell.upper(k));
    }
  }
}

TEST_CASE("class_grid covers every member box without duplicates") {
  const auto boxes = generate_instance("uniform", 40, 2, 11);
  const auto p = partition(boxes);
  for (int t = 0; t < p.num_classes(); ++t) {
    const auto grid = class_grid(p, t);
    const auto members = p.class_boxes(t);
    CHECK(grid.size() <= 9 * members.size());
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& c : grid) {
      CHECK(c.exponents == p.classes[static_cast<size_t>(t)].type.exponents);
      CHECK(seen.insert(c.index).second);
    }
    // Each member box is fully covered by the grid.
    double cell_vol = grid.empty() ? 0.0 : grid.front().volume();
    double grid_vol = cell_vol * static_cast<double>(grid.size());
    std::vector<AlignedBox> cover;
    cover.reserve(grid.size());
    for (const auto& c : grid) {
      cover.emplace_back(std::vector<double>{c.lower(0), c.lower(1)},
                         std::vector<double>{c.upper(0), c.upper(1)});
    }
    CHECK(grid_vol == doctest::Approx(exact_volume(cover)));
    for (const auto& b : members) {
      double covered = 0.0;
      for (const auto& c : cover) covered += box_intersection_volume(b, c);
      CHECK(covered == doctest::Approx(box_volume(b)));
    }
  }
}

TEST_CASE("p_sample_class keeps Pois(p Vol(U_t)) points on average") {
  const auto boxes = generate_instance("uniform", 25, 2, 13);
  const auto p = partition(boxes);
  const ClassIndex idx(p);
  const int t = 0;
  const double vol_t = exact_class_volume(p, t);
  const double density = 60.0 / vol_t;
  RandomStream stream(17);
  const int runs = 4000;
  std::vector<double> counts;
  counts.reserve(runs);
  for (int r = 0; r < runs; ++r) {
    const auto sample = p_sample_class(stream, t, density, p, idx);
    counts.push_back(static_cast<double>(sample.points.size()));
    for (const auto& x : sample.points) CHECK(naive_in_class(p, x, t));
  }
  const double m = statx::mean(counts);
  const double v = statx::sample_variance(counts);
  const double lambda = density * vol_t;
  const double se = std::sqrt(lambda / runs);
  CHECK(std::abs(m - lambda) < 5.0 * se);
  // Poisson: variance equals the mean.
  CHECK(std::abs(v - lambda) < 0.1 * lambda);
}

TEST_CASE("p_sample_class is bit-for-bit deterministic") {
  const auto boxes = generate_instance("cubes", 20, 2, 19);
  const auto p = partition(boxes);
  const ClassIndex idx(p);
  RandomStream s1(99, 3);
  RandomStream s2(99, 3);
  const auto a = p_sample_class(s1, 0, 500.0, p, idx);
  const auto b = p_sample_class(s2, 0, 500.0, p, idx);
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
}
