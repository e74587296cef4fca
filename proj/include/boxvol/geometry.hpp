#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace boxvol {

/// A point in d-dimensional space.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int k) const { return coords[static_cast<size_t>(k)]; }
  bool operator==(const Point&) const = default;
};

/// A closed axis-aligned box [lo_1,hi_1] x ... x [lo_d,hi_d].
/// Invariants checked at construction: equal dimensions, finite
/// coordinates, lo_k <= hi_k.
struct AlignedBox {
  std::vector<double> lo;
  std::vector<double> hi;

  AlignedBox() = default;
  AlignedBox(std::vector<double> lo_, std::vector<double> hi_);

  int dim() const { return static_cast<int>(lo.size()); }
  double side(int k) const { return hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)]; }
  bool degenerate() const;
  bool operator==(const AlignedBox&) const = default;
};

/// A half-open dyadic grid cell
/// [i_1 2^{L_1}, (i_1+1) 2^{L_1}) x ... x [i_d 2^{L_d}, (i_d+1) 2^{L_d}).
struct GridCell {
  std::vector<std::int64_t> index;
  std::vector<int> exponents;

  int dim() const { return static_cast<int>(index.size()); }
  double side(int k) const { return std::ldexp(1.0, exponents[static_cast<size_t>(k)]); }
  double lower(int k) const { return static_cast<double>(index[static_cast<size_t>(k)]) * side(k); }
  double upper(int k) const { return static_cast<double>(index[static_cast<size_t>(k)] + 1) * side(k); }
  double volume() const;
  bool operator==(const GridCell&) const = default;
};

/// Product of side lengths; 0 for a degenerate box.
double box_volume(const AlignedBox& b);

/// Closed-box containment, boundary inclusive. Throws on dimension mismatch.
bool box_contains(const AlignedBox& b, const Point& x);

/// Volume of the intersection of two boxes; 0 if they do not overlap.
double box_intersection_volume(const AlignedBox& a, const AlignedBox& b);

/// The dyadic cells whose intersection with the interior of b is nonempty.
/// Requires side lengths in [2^{L_k}, 2^{L_k+1}) for the given exponents;
/// the result then has at most 3^d cells.
std::vector<GridCell> cells_touching(const AlignedBox& b, const std::vector<int>& exponents);

}  // namespace boxvol
