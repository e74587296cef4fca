#include "boxvol/exact.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace boxvol {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

size_t rank_of(const std::vector<double>& coords, double x) {
  return static_cast<size_t>(std::lower_bound(coords.begin(), coords.end(), x) - coords.begin());
}

}  // namespace

double exact_volume(std::span<const AlignedBox> boxes, std::size_t cell_cap) {
  if (boxes.empty()) return 0.0;
  const int d = boxes.front().dim();
  for (const auto& b : boxes) {
    if (b.dim() != d) throw std::invalid_argument("exact_volume: mixed dimensions");
  }

  std::vector<std::vector<double>> coords(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    std::vector<double> c;
    c.reserve(2 * boxes.size());
    for (const auto& b : boxes) {
      c.push_back(b.lo[static_cast<size_t>(k)]);
      c.push_back(b.hi[static_cast<size_t>(k)]);
    }
    coords[static_cast<size_t>(k)] = sorted_unique(std::move(c));
  }

  std::vector<size_t> slabs(static_cast<size_t>(d));
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) {
    slabs[static_cast<size_t>(k)] = coords[static_cast<size_t>(k)].size() - 1;
    if (slabs[static_cast<size_t>(k)] == 0) return 0.0;
    if (total > cell_cap / slabs[static_cast<size_t>(k)]) {
      throw std::length_error("exact_volume: elementary cell cap exceeded");
    }
    total *= slabs[static_cast<size_t>(k)];
  }

  std::vector<std::size_t> stride(static_cast<size_t>(d));
  std::size_t s = 1;
  for (int k = d - 1; k >= 0; --k) {
    stride[static_cast<size_t>(k)] = s;
    s *= slabs[static_cast<size_t>(k)];
  }

  std::vector<char> covered(total, 0);
  std::vector<size_t> lo_rank(static_cast<size_t>(d)), hi_rank(static_cast<size_t>(d)), pos(static_cast<size_t>(d));
  for (const auto& b : boxes) {
    bool empty = false;
    for (int k = 0; k < d; ++k) {
      lo_rank[static_cast<size_t>(k)] = rank_of(coords[static_cast<size_t>(k)], b.lo[static_cast<size_t>(k)]);
      hi_rank[static_cast<size_t>(k)] = rank_of(coords[static_cast<size_t>(k)], b.hi[static_cast<size_t>(k)]);
      if (lo_rank[static_cast<size_t>(k)] == hi_rank[static_cast<size_t>(k)]) empty = true;
    }
    if (empty) continue;
    pos = lo_rank;
    for (;;) {
      std::size_t idx = 0;
      for (int k = 0; k < d; ++k) idx += pos[static_cast<size_t>(k)] * stride[static_cast<size_t>(k)];
      covered[idx] = 1;
      int k = d - 1;
      while (k >= 0) {
        if (++pos[static_cast<size_t>(k)] < hi_rank[static_cast<size_t>(k)]) break;
        pos[static_cast<size_t>(k)] = lo_rank[static_cast<size_t>(k)];
        --k;
      }
      if (k < 0) break;
    }
  }

  double volume = 0.0;
  std::fill(pos.begin(), pos.end(), size_t{0});
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (covered[idx]) {
      double v = 1.0;
      std::size_t rem = idx;
      for (int k = 0; k < d; ++k) {
        const size_t r = rem / stride[static_cast<size_t>(k)];
        rem %= stride[static_cast<size_t>(k)];
        v *= coords[static_cast<size_t>(k)][r + 1] - coords[static_cast<size_t>(k)][r];
      }
      volume += v;
    }
  }
  return volume;
}

double exact_volume_sweepline(std::span<const AlignedBox> boxes) {
  if (boxes.empty()) return 0.0;
  if (boxes.front().dim() != 2) {
    throw std::invalid_argument("exact_volume_sweepline: d == 2 only");
  }

  std::vector<double> xs, ys;
  for (const auto& b : boxes) {
    xs.push_back(b.lo[0]);
    xs.push_back(b.hi[0]);
    ys.push_back(b.lo[1]);
    ys.push_back(b.hi[1]);
  }
  xs = sorted_unique(std::move(xs));
  ys = sorted_unique(std::move(ys));
  if (xs.size() < 2 || ys.size() < 2) return 0.0;

  std::vector<int> cover(ys.size() - 1, 0);
  double area = 0.0;
  for (size_t xi = 0; xi + 1 < xs.size(); ++xi) {
    const double x_mid_lo = xs[xi];
    const double x_mid_hi = xs[xi + 1];
    std::fill(cover.begin(), cover.end(), 0);
    for (const auto& b : boxes) {
      if (b.lo[0] <= x_mid_lo && b.hi[0] >= x_mid_hi) {
        const size_t ylo = rank_of(ys, b.lo[1]);
        const size_t yhi = rank_of(ys, b.hi[1]);
        for (size_t yi = ylo; yi < yhi; ++yi) ++cover[yi];
      }
    }
    double len = 0.0;
    for (size_t yi = 0; yi + 1 < ys.size(); ++yi) {
      if (cover[yi] > 0) len += ys[yi + 1] - ys[yi];
    }
    area += len * (x_mid_hi - x_mid_lo);
  }
  return area;
}

double exact_class_volume(const ClassPartition& p, int t, std::size_t cell_cap) {
  if (t < 0 || t >= p.num_classes()) {
    throw std::out_of_range("exact_class_volume: unknown class id");
  }
  const auto span = p.class_boxes(t);
  return exact_volume(span, cell_cap);
}

}  // namespace boxvol
