#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "boxvol/geometry.hpp"
#include "boxvol/sampling.hpp"

namespace boxvol {

/// Per-run query accounting: one row per object plus running totals.
/// Append-only during a run; single owner.
struct QueryLedger {
  struct Totals {
    std::uint64_t vol = 0;
    std::uint64_t sample = 0;
    std::uint64_t contains = 0;
    std::uint64_t total() const { return vol + sample + contains; }
  };

  std::vector<Totals> per_object;
  Totals totals;

  void record_vol(int id);
  void record_sample(int id);
  void record_contains(int id);

 private:
  void ensure(int id);
};

/// Immutable copy of the ledger's running totals.
QueryLedger::Totals ledger_snapshot(const QueryLedger& ledger);

/// An object accessible only through the three-query interface.
class QueryObject {
 public:
  virtual ~QueryObject() = default;
  virtual double volume() const = 0;
  virtual Point sample_point(RandomStream& stream) const = 0;
  virtual bool contains_point(const Point& x) const = 0;
};

/// A box exposed as a query object: vol, independent uniform sampling per
/// axis, closed-box containment.
std::unique_ptr<QueryObject> wrap_box(AlignedBox b);

/// Instrumented access to one object: every query bumps the shared ledger.
class QueryHandle {
 public:
  QueryHandle(const QueryObject* obj, int id, QueryLedger* ledger)
      : obj_(obj), id_(id), ledger_(ledger) {}

  double vol() const {
    ledger_->record_vol(id_);
    return obj_->volume();
  }
  Point sample(RandomStream& stream) const {
    ledger_->record_sample(id_);
    return obj_->sample_point(stream);
  }
  bool contains(const Point& x) const {
    ledger_->record_contains(id_);
    return obj_->contains_point(x);
  }

  int id() const { return id_; }
  const QueryLedger& ledger() const { return *ledger_; }

 private:
  const QueryObject* obj_;
  int id_;
  QueryLedger* ledger_;
};

std::vector<QueryHandle> make_handles(std::span<const std::unique_ptr<QueryObject>> objects,
                                      QueryLedger& ledger);

}  // namespace boxvol
