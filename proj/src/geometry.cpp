#include "boxvol/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxvol {

AlignedBox::AlignedBox(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("AlignedBox: lo and hi must have equal nonzero dimension");
  }
  for (size_t k = 0; k < lo.size(); ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k])) {
      throw std::invalid_argument("AlignedBox: coordinates must be finite");
    }
    if (lo[k] > hi[k]) {
      throw std::invalid_argument("AlignedBox: lo_k > hi_k");
    }
  }
}

bool AlignedBox::degenerate() const {
  for (int k = 0; k < dim(); ++k) {
    if (side(k) == 0.0) return true;
  }
  return false;
}

double GridCell::volume() const {
  int sum = 0;
  for (int e : exponents) sum += e;
  return std::ldexp(1.0, sum);
}

double box_volume(const AlignedBox& b) {
  double v = 1.0;
  for (int k = 0; k < b.dim(); ++k) v *= b.side(k);
  return v;
}

bool box_contains(const AlignedBox& b, const Point& x) {
  if (b.dim() != x.dim()) {
    throw std::invalid_argument("box_contains: dimension mismatch");
  }
  for (int k = 0; k < b.dim(); ++k) {
    if (x[k] < b.lo[static_cast<size_t>(k)] || x[k] > b.hi[static_cast<size_t>(k)]) return false;
  }
  return true;
}

double box_intersection_volume(const AlignedBox& a, const AlignedBox& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("box_intersection_volume: dimension mismatch");
  }
  double v = 1.0;
  for (int k = 0; k < a.dim(); ++k) {
    const size_t i = static_cast<size_t>(k);
    const double lo = std::max(a.lo[i], b.lo[i]);
    const double hi = std::min(a.hi[i], b.hi[i]);
    if (hi <= lo) return 0.0;
    v *= hi - lo;
  }
  return v;
}

std::vector<GridCell> cells_touching(const AlignedBox& b, const std::vector<int>& exponents) {
  const int d = b.dim();
  if (static_cast<int>(exponents.size()) != d) {
    throw std::invalid_argument("cells_touching: exponent count mismatch");
  }
  if (box_volume(b) == 0.0) {
    throw std::invalid_argument("cells_touching: box must have nonzero volume");
  }
  // Per-dimension candidate indexes: cells [i s, (i+1) s) overlapping the
  // open interval (lo, hi).
  std::vector<std::vector<std::int64_t>> per_dim(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double s = std::ldexp(1.0, exponents[static_cast<size_t>(k)]);
    const double len = b.side(k);
    if (len < s || len >= 2.0 * s) {
      throw std::invalid_argument("cells_touching: side length outside dyadic window");
    }
    const double lo = b.lo[static_cast<size_t>(k)];
    const double hi = b.hi[static_cast<size_t>(k)];
    const auto base = static_cast<std::int64_t>(std::floor(lo / s));
    for (std::int64_t i = base - 1; i <= base + 3; ++i) {
      const double cell_lo = static_cast<double>(i) * s;
      const double cell_hi = static_cast<double>(i + 1) * s;
      if (cell_lo < hi && cell_hi > lo) {
        per_dim[static_cast<size_t>(k)].push_back(i);
      }
    }
  }
  std::vector<GridCell> out;
  std::vector<size_t> pos(static_cast<size_t>(d), 0);
  for (;;) {
    GridCell cell;
    cell.exponents = exponents;
    cell.index.resize(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
      cell.index[static_cast<size_t>(k)] = per_dim[static_cast<size_t>(k)][pos[static_cast<size_t>(k)]];
    }
    out.push_back(std::move(cell));
    int k = d - 1;
    while (k >= 0) {
      if (++pos[static_cast<size_t>(k)] < per_dim[static_cast<size_t>(k)].size()) break;
      pos[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace boxvol
