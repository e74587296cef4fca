#include "boxvol/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "boxvol/exact.hpp"

namespace boxvol {

ShapeType shape_type_of(const AlignedBox& b) {
  ShapeType t;
  t.exponents.reserve(static_cast<size_t>(b.dim()));
  for (int k = 0; k < b.dim(); ++k) {
    const double len = b.side(k);
    if (len <= 0.0) {
      throw std::invalid_argument("shape_type_of: degenerate side");
    }
    // ilogb is exact on normal doubles: 2^L <= len < 2^{L+1}.
    t.exponents.push_back(std::ilogb(len));
  }
  return t;
}

ClassPartition partition(std::span<const AlignedBox> boxes) {
  std::vector<int> live;
  int dropped = 0;
  for (int i = 0; i < static_cast<int>(boxes.size()); ++i) {
    if (boxes[static_cast<size_t>(i)].degenerate()) {
      ++dropped;
    } else {
      live.push_back(i);
    }
  }
  if (live.empty()) {
    throw std::invalid_argument("partition: all boxes degenerate");
  }

  std::vector<ShapeType> types;
  types.reserve(live.size());
  for (int i : live) types.push_back(shape_type_of(boxes[static_cast<size_t>(i)]));

  // Stable sort by type keeps relabeling deterministic for ties.
  std::vector<size_t> order(live.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return types[a] < types[b];
  });

  ClassPartition p;
  p.dropped_degenerate = dropped;
  p.boundaries.push_back(0);
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const size_t src = order[pos];
    p.boxes.push_back(boxes[static_cast<size_t>(live[src])]);
    p.original_index.push_back(live[src]);
    if (p.classes.empty() || p.classes.back().type != types[src]) {
      p.classes.push_back({types[src], static_cast<int>(pos), static_cast<int>(pos) + 1});
    } else {
      p.classes.back().end = static_cast<int>(pos) + 1;
    }
  }
  for (const auto& c : p.classes) p.boundaries.push_back(c.end);
  return p;
}

bool similar(const ShapeType& a, const ShapeType& b, std::int64_t n) {
  if (a.exponents.size() != b.exponents.size()) {
    throw std::invalid_argument("similar: dimension mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("similar: n must be at least 2");
  }
  const __int128 n4 = static_cast<__int128>(n) * n * n * n;
  for (size_t k = 0; k < a.exponents.size(); ++k) {
    const int gap = std::abs(a.exponents[k] - b.exponents[k]);
    if (gap >= 127) return false;
    if ((static_cast<__int128>(1) << gap) >= n4) return false;
  }
  return true;
}

OverlapAudit class_overlap_audit(const ClassPartition& p, double exact_volume_value) {
  OverlapAudit audit;
  audit.union_volume = exact_volume_value;
  for (int t = 0; t < p.num_classes(); ++t) {
    audit.class_volume_sum += exact_class_volume(p, t);
  }
  const int n = p.total();
  const int d = p.boxes.front().dim();
  const double log_n = std::log2(std::max(n, 2));
  audit.bound = std::ldexp(1.0, 3 * d + 1) * std::pow(log_n, d) * exact_volume_value;
  audit.pass = audit.class_volume_sum <= audit.bound;
  audit.margin = audit.class_volume_sum > 0.0 ? audit.bound / audit.class_volume_sum : 0.0;
  return audit;
}

}  // namespace boxvol
