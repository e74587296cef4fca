#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "boxvol/classify.hpp"
#include "boxvol/geometry.hpp"

namespace boxvol {

/// Multi-level segment tree answering "maximum value over all stored boxes
/// that contain a query point" (closed intervals per coordinate). One tree
/// level per coordinate; the final level keeps a per-node running maximum so
/// the value coordinate resolves in O(1) per visited node.
class StabbingIndex {
 public:
  struct Entry {
    std::vector<std::array<double, 2>> intervals;  // [lo, hi] per coordinate
    int value = 0;
  };

  explicit StabbingIndex(std::vector<Entry> entries);
  ~StabbingIndex();
  StabbingIndex(StabbingIndex&&) noexcept;
  StabbingIndex& operator=(StabbingIndex&&) noexcept;

  /// True iff some stored box containing `point` has value >= threshold.
  /// Visited tree nodes are added to *node_visits when provided.
  bool stab_at_least(std::span<const double> point, int threshold,
                     std::uint64_t* node_visits = nullptr) const;

  int dims() const { return dims_; }

 private:
  struct Level;
  std::vector<Entry> entries_;  // owns the data the tree points into
  std::unique_ptr<Level> root_;
  int dims_ = 0;
};

/// Stabbing structure for appears(x, i): is x contained in some box with
/// label >= i? Labels are 1-based positions in the relabeled box order.
class AppearsIndex {
 public:
  explicit AppearsIndex(std::span<const AlignedBox> boxes);

  bool appears(const Point& x, int i, std::uint64_t* node_visits = nullptr) const;
  int size() const { return n_; }

 private:
  StabbingIndex index_;
  int n_;
  int d_;
};

/// Stabbing structure for inClass(x, t): is x contained in the union of
/// class t's boxes? The class id acts as the leading tree coordinate.
class ClassIndex {
 public:
  explicit ClassIndex(const ClassPartition& p);

  bool in_class(const Point& x, int t, std::uint64_t* node_visits = nullptr) const;
  int num_classes() const { return m_; }

 private:
  StabbingIndex index_;
  int m_;
  int d_;
};

/// Reference oracles: linear scans with the same closed-box semantics.
bool naive_appears(std::span<const AlignedBox> boxes, const Point& x, int i);
bool naive_in_class(const ClassPartition& p, const Point& x, int t);

}  // namespace boxvol
