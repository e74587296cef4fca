#include "boxvol/range_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxvol {

namespace {

size_t coord_rank(const std::vector<double>& coords, double x) {
  return static_cast<size_t>(std::lower_bound(coords.begin(), coords.end(), x) - coords.begin());
}

// Elementary pieces alternate gaps and coordinate points:
// piece 2r   = open gap below coords[r]
// piece 2r+1 = the single coordinate coords[r]
int piece_of(const std::vector<double>& coords, double x) {
  const size_t r = coord_rank(coords, x);
  if (r < coords.size() && coords[r] == x) return static_cast<int>(2 * r + 1);
  return static_cast<int>(2 * r);
}

}  // namespace

struct StabbingIndex::Level {
  int dim = 0;
  bool last = false;
  std::vector<double> coords;
  int n_pieces = 1;
  std::vector<int> node_max;                      // last level only
  std::vector<std::unique_ptr<Level>> children;   // inner levels only

  static std::unique_ptr<Level> build(const std::vector<const Entry*>& entries, int depth,
                                      int total_dims);

  bool query(std::span<const double> point, int threshold, std::uint64_t* visits) const;

 private:
  void insert(std::vector<std::vector<const Entry*>>& canonical, size_t node, int lo, int hi,
              const Entry* e, int pl, int pr);
};

std::unique_ptr<StabbingIndex::Level> StabbingIndex::Level::build(
    const std::vector<const Entry*>& entries, int depth, int total_dims) {
  auto level = std::make_unique<Level>();
  level->dim = depth;
  level->last = depth + 1 == total_dims;

  std::vector<double> coords;
  coords.reserve(2 * entries.size());
  for (const Entry* e : entries) {
    coords.push_back(e->intervals[static_cast<size_t>(depth)][0]);
    coords.push_back(e->intervals[static_cast<size_t>(depth)][1]);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  level->coords = std::move(coords);
  level->n_pieces = static_cast<int>(2 * level->coords.size() + 1);

  const size_t tree_size = 4 * static_cast<size_t>(level->n_pieces);
  std::vector<std::vector<const Entry*>> canonical(tree_size);
  for (const Entry* e : entries) {
    const int pl =
        static_cast<int>(2 * coord_rank(level->coords, e->intervals[static_cast<size_t>(depth)][0]) + 1);
    const int pr =
        static_cast<int>(2 * coord_rank(level->coords, e->intervals[static_cast<size_t>(depth)][1]) + 1);
    level->insert(canonical, 1, 0, level->n_pieces - 1, e, pl, pr);
  }

  if (level->last) {
    level->node_max.assign(tree_size, std::numeric_limits<int>::min());
    for (size_t node = 0; node < tree_size; ++node) {
      for (const Entry* e : canonical[node]) {
        level->node_max[node] = std::max(level->node_max[node], e->value);
      }
    }
  } else {
    level->children.resize(tree_size);
    for (size_t node = 0; node < tree_size; ++node) {
      if (!canonical[node].empty()) {
        level->children[node] = build(canonical[node], depth + 1, total_dims);
      }
    }
  }
  return level;
}

void StabbingIndex::Level::insert(std::vector<std::vector<const Entry*>>& canonical, size_t node,
                                  int lo, int hi, const Entry* e, int pl, int pr) {
  if (pr < lo || hi < pl) return;
  if (pl <= lo && hi <= pr) {
    canonical[node].push_back(e);
    return;
  }
  const int mid = lo + (hi - lo) / 2;
  insert(canonical, 2 * node, lo, mid, e, pl, pr);
  insert(canonical, 2 * node + 1, mid + 1, hi, e, pl, pr);
}

bool StabbingIndex::Level::query(std::span<const double> point, int threshold,
                                 std::uint64_t* visits) const {
  const int piece = piece_of(coords, point[static_cast<size_t>(dim)]);
  size_t node = 1;
  int lo = 0, hi = n_pieces - 1;
  for (;;) {
    if (visits) ++*visits;
    if (last) {
      if (node_max[node] >= threshold) return true;
    } else if (children[node] && children[node]->query(point, threshold, visits)) {
      return true;
    }
    if (lo == hi) return false;
    const int mid = lo + (hi - lo) / 2;
    if (piece <= mid) {
      node = 2 * node;
      hi = mid;
    } else {
      node = 2 * node + 1;
      lo = mid + 1;
    }
  }
}

StabbingIndex::StabbingIndex(std::vector<Entry> entries) {
  if (entries.empty()) return;
  dims_ = static_cast<int>(entries.front().intervals.size());
  for (const auto& e : entries) {
    if (static_cast<int>(e.intervals.size()) != dims_) {
      throw std::invalid_argument("StabbingIndex: mixed entry dimensions");
    }
  }
  entries_ = std::move(entries);
  std::vector<const Entry*> ptrs;
  ptrs.reserve(entries_.size());
  for (const auto& e : entries_) ptrs.push_back(&e);
  root_ = Level::build(ptrs, 0, dims_);
}

StabbingIndex::~StabbingIndex() = default;
StabbingIndex::StabbingIndex(StabbingIndex&&) noexcept = default;
StabbingIndex& StabbingIndex::operator=(StabbingIndex&&) noexcept = default;

bool StabbingIndex::stab_at_least(std::span<const double> point, int threshold,
                                  std::uint64_t* node_visits) const {
  if (!root_) return false;
  if (static_cast<int>(point.size()) != dims_) {
    throw std::invalid_argument("StabbingIndex: query dimension mismatch");
  }
  return root_->query(point, threshold, node_visits);
}

namespace {

std::vector<StabbingIndex::Entry> appears_entries(std::span<const AlignedBox> boxes) {
  if (boxes.empty()) {
    throw std::invalid_argument("AppearsIndex: empty input");
  }
  std::vector<StabbingIndex::Entry> entries;
  entries.reserve(boxes.size());
  for (size_t j = 0; j < boxes.size(); ++j) {
    StabbingIndex::Entry e;
    e.value = static_cast<int>(j) + 1;  // 1-based label
    for (int k = 0; k < boxes[j].dim(); ++k) {
      e.intervals.push_back({boxes[j].lo[static_cast<size_t>(k)], boxes[j].hi[static_cast<size_t>(k)]});
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<StabbingIndex::Entry> class_entries(const ClassPartition& p) {
  std::vector<StabbingIndex::Entry> entries;
  entries.reserve(p.boxes.size());
  for (int t = 0; t < p.num_classes(); ++t) {
    const auto& c = p.classes[static_cast<size_t>(t)];
    for (int i = c.begin; i < c.end; ++i) {
      const auto& b = p.boxes[static_cast<size_t>(i)];
      StabbingIndex::Entry e;
      e.value = i + 1;
      e.intervals.push_back({static_cast<double>(t), static_cast<double>(t)});
      for (int k = 0; k < b.dim(); ++k) {
        e.intervals.push_back({b.lo[static_cast<size_t>(k)], b.hi[static_cast<size_t>(k)]});
      }
      entries.push_back(std::move(e));
    }
  }
  return entries;
}

}  // namespace

AppearsIndex::AppearsIndex(std::span<const AlignedBox> boxes)
    : index_(appears_entries(boxes)),
      n_(static_cast<int>(boxes.size())),
      d_(boxes.front().dim()) {}

bool AppearsIndex::appears(const Point& x, int i, std::uint64_t* node_visits) const {
  if (i < 1 || i > n_ + 1) {
    throw std::out_of_range("appears: label out of range");
  }
  if (x.dim() != d_) {
    throw std::invalid_argument("appears: dimension mismatch");
  }
  if (i == n_ + 1) return false;
  return index_.stab_at_least(x.coords, i, node_visits);
}

ClassIndex::ClassIndex(const ClassPartition& p)
    : index_(class_entries(p)), m_(p.num_classes()), d_(p.boxes.front().dim()) {
  if (d_ + 1 > 16) throw std::invalid_argument("ClassIndex: dimension too large");
}

bool ClassIndex::in_class(const Point& x, int t, std::uint64_t* node_visits) const {
  if (t < 0 || t >= m_) {
    throw std::out_of_range("in_class: unknown class id");
  }
  if (x.dim() != d_) {
    throw std::invalid_argument("in_class: dimension mismatch");
  }
  double q[16];
  q[0] = static_cast<double>(t);
  for (int k = 0; k < d_; ++k) q[k + 1] = x.coords[static_cast<size_t>(k)];
  return index_.stab_at_least(std::span<const double>(q, static_cast<size_t>(d_) + 1),
                              std::numeric_limits<int>::min() + 1, node_visits);
}

bool naive_appears(std::span<const AlignedBox> boxes, const Point& x, int i) {
  for (size_t j = static_cast<size_t>(std::max(i - 1, 0)); j < boxes.size(); ++j) {
    if (box_contains(boxes[j], x)) return true;
  }
  return false;
}

bool naive_in_class(const ClassPartition& p, const Point& x, int t) {
  for (const auto& b : p.class_boxes(t)) {
    if (box_contains(b, x)) return true;
  }
  return false;
}

}  // namespace boxvol
