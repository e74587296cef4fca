#include "boxvol/querymodel.hpp"

namespace boxvol {

void QueryLedger::ensure(int id) {
  if (id >= static_cast<int>(per_object.size())) {
    per_object.resize(static_cast<size_t>(id) + 1);
  }
}

void QueryLedger::record_vol(int id) {
  ensure(id);
  ++per_object[static_cast<size_t>(id)].vol;
  ++totals.vol;
}

void QueryLedger::record_sample(int id) {
  ensure(id);
  ++per_object[static_cast<size_t>(id)].sample;
  ++totals.sample;
}

void QueryLedger::record_contains(int id) {
  ensure(id);
  ++per_object[static_cast<size_t>(id)].contains;
  ++totals.contains;
}

QueryLedger::Totals ledger_snapshot(const QueryLedger& ledger) { return ledger.totals; }

namespace {

class BoxObject final : public QueryObject {
 public:
  explicit BoxObject(AlignedBox b) : box_(std::move(b)), volume_(box_volume(box_)) {}

  double volume() const override { return volume_; }

  Point sample_point(RandomStream& stream) const override {
    std::vector<double> coords(static_cast<size_t>(box_.dim()));
    for (int k = 0; k < box_.dim(); ++k) {
      coords[static_cast<size_t>(k)] =
          box_.lo[static_cast<size_t>(k)] + stream.next_double() * box_.side(k);
    }
    return Point(std::move(coords));
  }

  bool contains_point(const Point& x) const override { return box_contains(box_, x); }

 private:
  AlignedBox box_;
  double volume_;
};

}  // namespace

std::unique_ptr<QueryObject> wrap_box(AlignedBox b) {
  return std::make_unique<BoxObject>(std::move(b));
}

std::vector<QueryHandle> make_handles(std::span<const std::unique_ptr<QueryObject>> objects,
                                      QueryLedger& ledger) {
  ledger.per_object.resize(objects.size());
  std::vector<QueryHandle> handles;
  handles.reserve(objects.size());
  for (size_t i = 0; i < objects.size(); ++i) {
    handles.emplace_back(objects[i].get(), static_cast<int>(i), &ledger);
  }
  return handles;
}

}  // namespace boxvol
