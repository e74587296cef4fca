#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "boxvol/estimate.hpp"
#include "boxvol/exact.hpp"
#include "boxvol/instances.hpp"
#include "stat_utils.hpp"

using namespace boxvol;

namespace {

std::vector<QueryHandle> handles_for(std::span<const AlignedBox> boxes,
                                     std::vector<std::unique_ptr<QueryObject>>& storage,
                                     QueryLedger& ledger) {
  storage.clear();
  storage.reserve(boxes.size());
  for (const auto& b : boxes) storage.push_back(wrap_box(b));
  return make_handles(storage, ledger);
}

}  // namespace

TEST_CASE("prefix volumes and weighted pick") {
  const std::vector<AlignedBox> boxes = {AlignedBox({0.0}, {1.0}), AlignedBox({0.0}, {3.0}),
                                         AlignedBox({0.0}, {4.0})};
  const auto p = PrefixVolumes::over(boxes);
  CHECK(p.sums == std::vector<double>{0.0, 1.0, 4.0, 8.0});
  CHECK(p.total() == doctest::Approx(8.0));
  CHECK(p.pick(0.0) == 1);
  CHECK(p.pick(0.125) == 1);
  CHECK(p.pick(0.1250001) == 2);
  CHECK(p.pick(0.5) == 2);
  CHECK(p.pick(0.6) == 3);
  CHECK(p.pick(1.0) == 3);
}

TEST_CASE("crude is exact on a single box") {
  const std::vector<AlignedBox> boxes = {AlignedBox({1.0, 2.0}, {3.0, 4.5})};
  const KleeEstimator est(boxes);
  RandomStream stream(5);
  RunCounters counters;
  CHECK(est.crude(stream, counters) == doctest::Approx(7.0 * 2.0 / 2.8).epsilon(1e-12));
  CHECK(counters.points_sampled == 40);
  CHECK(counters.appears_queries == 40);
}

TEST_CASE("crude lands within a small constant factor of the truth") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto boxes = generate_instance("uniform", 40, 2, seed);
    const double truth = exact_volume(boxes);
    const KleeEstimator est(boxes);
    RandomStream stream(seed + 100);
    RunCounters counters;
    const double v = est.crude(stream, counters);
    CHECK(v > truth / 2.0);
    CHECK(v < truth * 2.0);
  }
}

TEST_CASE("single-run estimator is reproducible and near the truth") {
  const auto boxes = generate_instance("uniform", 60, 2, 21);
  const double truth = exact_volume(boxes);
  const KleeEstimator est(boxes);
  const auto a = est.estimate_once(0.1, 7);
  const auto b = est.estimate_once(0.1, 7);
  CHECK(a.estimate == b.estimate);
  CHECK(a.counters.work() == b.counters.work());
  CHECK(std::abs(a.estimate - truth) < 0.25 * truth);
  CHECK_FALSE(a.aborted);
  CHECK(a.counters.points_sampled > 0);
  CHECK(a.counters.inclass_queries > 0);
}

TEST_CASE("single-run estimator mean matches the exact volume") {
  const auto boxes = generate_instance("cubes", 30, 2, 23);
  const double truth = exact_volume(boxes);
  const KleeEstimator est(boxes);
  const int runs = 250;
  std::vector<double> xs;
  xs.reserve(runs);
  for (int r = 0; r < runs; ++r) {
    xs.push_back(est.estimate_once(0.2, 900, static_cast<std::uint64_t>(r)).estimate);
  }
  const double m = statx::mean(xs);
  const double se = std::sqrt(statx::sample_variance(xs) / runs);
  CHECK(std::abs(m - truth) < 5.0 * se);
}

TEST_CASE("estimator validates epsilon") {
  const auto boxes = generate_instance("uniform", 5, 2, 1);
  const KleeEstimator est(boxes);
  CHECK_THROWS_AS(est.estimate_once(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(est.estimate_once(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(est.estimate_boosted(0.1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(est.estimate_boosted(0.1, 1, 0), std::invalid_argument);
}

TEST_CASE("work budget aborts a run") {
  const auto boxes = generate_instance("uniform", 30, 2, 25);
  const KleeEstimator est(boxes);
  const auto run = est.estimate_once(0.1, 3, 0, 1);
  CHECK(run.aborted);
  const auto boosted = est.estimate_boosted(0.1, 3, 3, 1);
  CHECK(boosted.aborted);
}

TEST_CASE("boosting with one repetition reduces to a single run") {
  const auto boxes = generate_instance("uniform", 40, 2, 27);
  const KleeEstimator est(boxes);
  const auto single = est.estimate_once(0.1, 11, 0);
  const auto boosted = est.estimate_boosted(0.1, 11, 1);
  CHECK(boosted.estimate == single.estimate);
  CHECK(boosted.counters.work() == single.counters.work());
}

TEST_CASE("boosted runs complete under the adaptive budget") {
  const auto boxes = generate_instance("uniform", 50, 2, 29);
  const double truth = exact_volume(boxes);
  const KleeEstimator est(boxes);
  const auto run = est.estimate_boosted(0.1, 13);
  CHECK_FALSE(run.aborted);
  CHECK(std::abs(run.estimate - truth) < 0.2 * truth);
}

TEST_CASE("klm baseline is near the truth and stays within budget") {
  const auto boxes = generate_instance("uniform", 40, 2, 33);
  const double truth = exact_volume(boxes);
  std::vector<std::unique_ptr<QueryObject>> storage;
  QueryLedger ledger;
  const auto handles = handles_for(boxes, storage, ledger);
  RandomStream stream(3);
  const auto run = klm_baseline(handles, 0.1, stream);
  const auto budget = static_cast<std::uint64_t>(std::ceil(8.0 * 40 / 0.01));
  CHECK(run.counters.query_total() <= budget);
  CHECK(run.counters.vol_queries == 40);
  CHECK(std::abs(run.estimate - truth) < 0.15 * truth);
}

TEST_CASE("klm baseline mean matches the exact volume") {
  const auto boxes = generate_instance("cubes", 25, 2, 35);
  const double truth = exact_volume(boxes);
  std::vector<std::unique_ptr<QueryObject>> storage;
  QueryLedger ledger;
  const auto handles = handles_for(boxes, storage, ledger);
  const int runs = 200;
  std::vector<double> xs;
  xs.reserve(runs);
  for (int r = 0; r < runs; ++r) {
    RandomStream stream(777, static_cast<std::uint64_t>(r));
    xs.push_back(klm_baseline(handles, 0.2, stream).estimate);
  }
  const double m = statx::mean(xs);
  const double se = std::sqrt(statx::sample_variance(xs) / runs);
  CHECK(std::abs(m - truth) < 5.0 * se);
}

TEST_CASE("klm baseline throws when nothing completes") {
  const std::vector<AlignedBox> boxes = {AlignedBox({0.0}, {1.0}), AlignedBox({2.0}, {3.0})};
  std::vector<std::unique_ptr<QueryObject>> storage;
  QueryLedger ledger;
  const auto handles = handles_for(boxes, storage, ledger);
  RandomStream stream(1);
  CHECK_THROWS_AS(klm_baseline(handles, 0.1, stream, 2), std::runtime_error);
}
