#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "boxvol/geometry.hpp"

namespace boxvol {

/// Shape type of a box: the integer exponent vector (L_1,...,L_d) such that
/// the side length in dimension k lies in [2^{L_k}, 2^{L_k+1}).
struct ShapeType {
  std::vector<int> exponents;
  auto operator<=>(const ShapeType&) const = default;
};

/// Exponent vector of a positive-volume box, via exact binary-exponent
/// extraction of each side length. Throws on degenerate sides.
ShapeType shape_type_of(const AlignedBox& b);

/// Grouping of boxes into shape classes with a deterministic processing
/// order (lexicographic on exponent vectors). Boxes are relabeled so that
/// class t owns the contiguous label range (boundaries[t], boundaries[t+1]].
/// Labels are 1-based throughout.
struct ClassPartition {
  struct ShapeClass {
    ShapeType type;
    int begin;  // 0-based offset into `boxes` of the first member
    int end;    // one past the last member
    int size() const { return end - begin; }
  };

  std::vector<AlignedBox> boxes;       // relabeled, degenerates dropped
  std::vector<int> original_index;     // boxes[i] came from input position original_index[i]
  std::vector<ShapeClass> classes;
  std::vector<int> boundaries;         // i_0 = 0 < i_1 < ... < i_m = n
  int dropped_degenerate = 0;

  int total() const { return static_cast<int>(boxes.size()); }
  int num_classes() const { return static_cast<int>(classes.size()); }
  std::span<const AlignedBox> class_boxes(int t) const {
    const auto& c = classes[static_cast<size_t>(t)];
    return std::span<const AlignedBox>(boxes).subspan(static_cast<size_t>(c.begin),
                                                      static_cast<size_t>(c.size()));
  }
};

/// Partition boxes into shape classes. Degenerate boxes are dropped (and
/// counted); throws if nothing remains.
ClassPartition partition(std::span<const AlignedBox> boxes);

/// Similarity predicate: true iff 2^{|L_k - L'_k|} < n^4 in every dimension,
/// evaluated in exact integer arithmetic. Requires n >= 2.
bool similar(const ShapeType& a, const ShapeType& b, std::int64_t n);

/// Result of auditing the per-class volume sum against its polylog bound.
struct OverlapAudit {
  double class_volume_sum = 0.0;  // sum over classes of Vol(U_t)
  double bound = 0.0;             // 2^{3d+1} log2^d(n) * V
  double union_volume = 0.0;
  bool pass = false;
  double margin = 0.0;            // bound / sum
};

/// Audit sum_t Vol(U_t) <= 2^{3d+1} log2^d(n) * V, each class volume taken
/// from the exact oracle. exact_volume is the oracle value for the full set.
OverlapAudit class_overlap_audit(const ClassPartition& p, double exact_volume);

}  // namespace boxvol
