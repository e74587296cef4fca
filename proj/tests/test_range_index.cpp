#include <doctest.h>

#include <cmath>
#include <vector>

#include "boxvol/classify.hpp"
#include "boxvol/instances.hpp"
#include "boxvol/range_index.hpp"
#include "boxvol/sampling.hpp"
#include "stat_utils.hpp"

using namespace boxvol;

TEST_CASE("appears index on a hand-built chain") {
  const std::vector<AlignedBox> boxes = {
      AlignedBox({0.0}, {1.0}),  // label 1
      AlignedBox({2.0}, {3.0}),  // label 2
      AlignedBox({0.5}, {2.5}),  // label 3
  };
  const AppearsIndex idx(boxes);
  const Point p({0.25});
  CHECK(idx.appears(p, 1));
  CHECK_FALSE(idx.appears(p, 2));  // only box 1 holds 0.25
  const Point q({0.75});
  CHECK(idx.appears(q, 2));  // box 3 holds 0.75
  CHECK(idx.appears(q, 3));
  CHECK_FALSE(idx.appears(q, 4));  // i = n+1 is always false
  const Point r({5.0});
  CHECK_FALSE(idx.appears(r, 1));
}

TEST_CASE("appears boundaries are closed") {
  const std::vector<AlignedBox> boxes = {AlignedBox({0.0, 0.0}, {1.0, 1.0})};
  const AppearsIndex idx(boxes);
  CHECK(idx.appears(Point({0.0, 1.0}), 1));
  CHECK(idx.appears(Point({1.0, 0.0}), 1));
  CHECK_FALSE(idx.appears(Point({1.0 + 1e-12, 0.5}), 1));
}

TEST_CASE("appears differential fuzz against the linear scan") {
  RandomStream stream(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(40));
    const int d = 1 + static_cast<int>(stream.next_below(3));
    const auto boxes = generate_instance("uniform", n, d, 1000 + static_cast<std::uint64_t>(trial));
    const AppearsIndex idx(boxes);
    for (int q = 0; q < 50; ++q) {
      std::vector<double> coords(static_cast<size_t>(d));
      for (auto& c : coords) c = stream.next_double() * 1.2 - 0.1;
      const Point x(coords);
      const int i = 1 + static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n) + 1));
      CHECK(idx.appears(x, i) == naive_appears(boxes, x, i));
    }
  }
}

TEST_CASE("class index differential fuzz against the linear scan") {
  RandomStream stream(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(stream.next_below(40));
    const auto boxes = generate_instance("uniform", n, 2, 2000 + static_cast<std::uint64_t>(trial));
    const auto p = partition(boxes);
    const ClassIndex idx(p);
    REQUIRE(idx.num_classes() == p.num_classes());
    for (int q = 0; q < 50; ++q) {
      const Point x({stream.next_double() * 1.2 - 0.1, stream.next_double() * 1.2 - 0.1});
      const int t = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(p.num_classes())));
      CHECK(idx.in_class(x, t) == naive_in_class(p, x, t));
    }
  }
}

TEST_CASE("query cost grows polylogarithmically, not linearly") {
  std::vector<double> log_n, log_cost;
  for (const int n : {256, 1024, 4096, 16384}) {
    const auto boxes = generate_instance("uniform", n, 2, 77);
    const AppearsIndex idx(boxes);
    RandomStream stream(7);
    std::uint64_t visits = 0;
    const int queries = 2000;
    for (int q = 0; q < queries; ++q) {
      const Point x({stream.next_double(), stream.next_double()});
      const int i = 1 + static_cast<int>(stream.next_below(static_cast<std::uint64_t>(n)));
      idx.appears(x, i, &visits);
    }
    log_n.push_back(std::log2(static_cast<double>(n)));
    log_cost.push_back(std::log2(static_cast<double>(visits) / queries));
  }
  // A linear-scan structure would show slope about 1; the tree stays well
  // below that.
  CHECK(statx::ls_slope(log_n, log_cost) < 0.5);
}

TEST_CASE("stab_at_least honors the threshold semantics") {
  std::vector<StabbingIndex::Entry> entries;
  entries.push_back({{{0.0, 2.0}}, 5});
  entries.push_back({{{1.0, 3.0}}, 9});
  const StabbingIndex idx(std::move(entries));
  const std::vector<double> left{0.5};
  const std::vector<double> mid{1.5};
  CHECK(idx.stab_at_least(left, 5));
  CHECK_FALSE(idx.stab_at_least(left, 6));
  CHECK(idx.stab_at_least(mid, 9));
  CHECK_FALSE(idx.stab_at_least(mid, 10));
  const std::vector<double> outside{4.0};
  CHECK_FALSE(idx.stab_at_least(outside, 0));
}
