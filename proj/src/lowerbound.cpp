#include "boxvol/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "boxvol/estimate.hpp"

namespace boxvol {

namespace {

std::vector<int> random_permutation(int n, RandomStream& stream) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }
  return perm;
}

std::vector<int> random_signs(int ell, RandomStream& stream) {
  std::vector<int> v(static_cast<size_t>(ell));
  for (auto& b : v) b = stream.next_below(2) == 0 ? -1 : 1;
  return v;
}

}  // namespace

int HiddenInstance::inner_product() const {
  int dot = 0;
  for (size_t j = 0; j < x.size(); ++j) dot += x[j] * y[j];
  return dot;
}

void HiddenInstance::log_access(Side side, int j) const {
  ++bit_access_events;
  auto& flags = side == Side::X ? x_read : y_read;
  flags[static_cast<size_t>(j - 1)] = 1;
}

int ell_from_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("ell_from_epsilon: epsilon must be in (0,1)");
  }
  return static_cast<int>(std::floor(1.0 / (36.0 * epsilon * epsilon)));
}

HiddenInstance build_instance(int n, int ell, GapSign sign, RandomStream& stream,
                              bool random_vectors) {
  if (n < 1 || ell < 1) {
    throw std::invalid_argument("build_instance: need n >= 1 and ell >= 1");
  }
  HiddenInstance inst;
  inst.n = n;
  inst.ell = ell;
  inst.x = random_signs(ell, stream);

  if (random_vectors) {
    inst.y = random_signs(ell, stream);
  } else {
    // Smallest |<x,y>| at or past the gap boundary, with parity matching ell.
    int target = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ell))));
    if ((ell - target) % 2 != 0) ++target;
    if (target > ell) {
      throw std::invalid_argument("build_instance: no feasible inner product for this ell");
    }
    const int dot = sign == GapSign::Positive ? target : -target;
    const int agree = (dot + ell) / 2;
    std::vector<int> idx(static_cast<size_t>(ell));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = ell - 1; i > 0; --i) {
      const auto j = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }
    inst.y.assign(static_cast<size_t>(ell), 0);
    for (int r = 0; r < ell; ++r) {
      const size_t j = static_cast<size_t>(idx[static_cast<size_t>(r)]);
      inst.y[j] = r < agree ? inst.x[j] : -inst.x[j];
    }
  }

  inst.pi.reserve(static_cast<size_t>(ell));
  inst.tau.reserve(static_cast<size_t>(ell));
  for (int j = 0; j < ell; ++j) inst.pi.push_back(random_permutation(n, stream));
  for (int j = 0; j < ell; ++j) inst.tau.push_back(random_permutation(n, stream));
  inst.x_read.assign(static_cast<size_t>(ell), 0);
  inst.y_read.assign(static_cast<size_t>(ell), 0);
  return inst;
}

namespace {

class HiddenObject final : public QueryObject {
 public:
  HiddenObject(const HiddenInstance* inst, Side side, int i)
      : inst_(inst), side_(side), i_(i) {}

  double volume() const override {
    return static_cast<double>(inst_->n + 1) * static_cast<double>(inst_->ell);
  }

  Point sample_point(RandomStream& stream) const override {
    const long long n = inst_->n;
    const int j = 1 + static_cast<int>(stream.next_below(static_cast<std::uint64_t>(inst_->ell)));
    const long long s = 1 + static_cast<long long>(stream.next_below(static_cast<std::uint64_t>(n)));
    if (stream.next_double() < 1.0 - 1.0 / static_cast<double>(n + 1)) {
      return Point({static_cast<double>(j * n + s), 0.0});
    }
    inst_->log_access(side_, j);
    return Point({static_cast<double>(j * n + perm(j)), static_cast<double>(bit(j))});
  }

  bool contains_point(const Point& q) const override {
    if (q.dim() != 2) {
      throw std::invalid_argument("hidden contains: point must be two-dimensional");
    }
    const auto a = static_cast<long long>(std::llround(q[0]));
    const auto b = static_cast<long long>(std::llround(q[1]));
    if (static_cast<double>(a) != q[0] || static_cast<double>(b) != q[1]) {
      throw std::invalid_argument("hidden contains: point must be a lattice point");
    }
    const long long n = inst_->n;
    const long long ell = inst_->ell;
    if (b == 0 && a >= n + 1 && a <= n * ell + n) return true;  // the shared band R
    // Block decode: a = jn + s with s in [n].
    if (a < 1) return false;
    const long long j = (a - 1) / n;
    const long long s = a - j * n;
    if (j < 1 || j > ell) return false;
    if (perm(static_cast<int>(j)) != s) return false;
    inst_->log_access(side_, static_cast<int>(j));
    return bit(static_cast<int>(j)) == static_cast<int>(b);
  }

 private:
  long long perm(int j) const {
    const auto& perms = side_ == Side::X ? inst_->pi : inst_->tau;
    return perms[static_cast<size_t>(j - 1)][static_cast<size_t>(i_ - 1)];
  }
  int bit(int j) const {
    const auto& bits = side_ == Side::X ? inst_->x : inst_->y;
    return bits[static_cast<size_t>(j - 1)];
  }

  const HiddenInstance* inst_;
  Side side_;
  int i_;  // 1-based object index
};

}  // namespace

std::vector<std::unique_ptr<QueryObject>> make_hidden_objects(const HiddenInstance& inst) {
  std::vector<std::unique_ptr<QueryObject>> objects;
  objects.reserve(2 * static_cast<size_t>(inst.n));
  for (int i = 1; i <= inst.n; ++i) {
    objects.push_back(std::make_unique<HiddenObject>(&inst, Side::X, i));
  }
  for (int i = 1; i <= inst.n; ++i) {
    objects.push_back(std::make_unique<HiddenObject>(&inst, Side::Y, i));
  }
  return objects;
}

std::vector<Point> materialize_points(const HiddenInstance& inst, Side side, int i) {
  if (i < 1 || i > inst.n) {
    throw std::out_of_range("materialize_points: object index out of range");
  }
  const long long n = inst.n;
  std::vector<Point> points;
  points.reserve(static_cast<size_t>((n + 1) * inst.ell));
  for (long long a = n + 1; a <= n * inst.ell + n; ++a) {
    points.push_back(Point({static_cast<double>(a), 0.0}));
  }
  const auto& perms = side == Side::X ? inst.pi : inst.tau;
  const auto& bits = side == Side::X ? inst.x : inst.y;
  for (int j = 1; j <= inst.ell; ++j) {
    const long long a = static_cast<long long>(j) * n +
                        perms[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
    points.push_back(Point({static_cast<double>(a), static_cast<double>(bits[static_cast<size_t>(j - 1)])}));
  }
  return points;
}

long long union_cardinality(const HiddenInstance& inst) {
  const long long n = inst.n;
  const long long ell = inst.ell;
  if (n * ell > 1'000'000'000LL) {
    throw std::length_error("union_cardinality: n * ell exceeds the overflow guard");
  }
  return (5 * n * ell - n * static_cast<long long>(inst.inner_product())) / 2;
}

long long union_cardinality_materialized(const HiddenInstance& inst) {
  const long long n = inst.n;
  const long long ell = inst.ell;
  if (2 * n * (n + 1) * ell > 100'000'000LL) {
    throw std::length_error("union_cardinality_materialized: instance too large to materialize");
  }
  std::set<std::pair<long long, long long>> points;
  for (int side = 0; side < 2; ++side) {
    for (int i = 1; i <= inst.n; ++i) {
      for (const Point& p : materialize_points(inst, side == 0 ? Side::X : Side::Y, i)) {
        points.emplace(static_cast<long long>(p[0]), static_cast<long long>(p[1]));
      }
    }
  }
  return static_cast<long long>(points.size());
}

bool mini_game(int n, int rounds, const GameStrategy& strategy, RandomStream& stream) {
  if (n < 1 || rounds < 0 || rounds > n) {
    throw std::invalid_argument("mini_game: need 0 <= rounds <= n");
  }
  const std::vector<int> secret = random_permutation(n, stream);
  const auto answers = std::make_unique<bool[]>(static_cast<size_t>(rounds > 0 ? rounds : 1));
  bool ever_yes = false;
  for (int round = 0; round < rounds; ++round) {
    const GameRequest request =
        strategy(round, std::span<const bool>(answers.get(), static_cast<size_t>(round)));
    bool yes;
    if (request.is_probe) {
      if (request.i < 1 || request.i > n || request.s < 1 || request.s > n) {
        throw std::invalid_argument("mini_game: malformed probe indexes");
      }
      yes = secret[static_cast<size_t>(request.i - 1)] == request.s;
    } else {
      yes = stream.next_double() < 1.0 / static_cast<double>(n + 1);
    }
    answers[static_cast<size_t>(round)] = yes;
    ever_yes = ever_yes || yes;
  }
  return ever_yes;
}

LowerBoundTrial run_lowerbound_trial(int n, int ell, const std::string& algo, VectorMode mode,
                                     std::uint64_t seed, std::uint64_t stream_id) {
  RandomStream instance_stream(seed, 2 * stream_id);
  RandomStream algo_stream(seed, 2 * stream_id + 1);
  const GapSign sign = mode == VectorMode::BoundaryNegative ? GapSign::Negative : GapSign::Positive;
  const HiddenInstance inst =
      build_instance(n, ell, sign, instance_stream, mode == VectorMode::Random);

  const auto objects = make_hidden_objects(inst);
  QueryLedger ledger;
  const auto handles = make_handles(objects, ledger);

  LowerBoundTrial trial;
  trial.n = n;
  trial.ell = ell;
  trial.algo = algo;
  trial.true_dot = inst.inner_product();

  const double nd = static_cast<double>(n);
  if (algo == "klm") {
    const double epsilon = 1.0 / (6.0 * std::sqrt(static_cast<double>(ell)));
    const EstimateReport report = klm_baseline(handles, epsilon, algo_stream);
    trial.estimate = report.estimate;
  } else if (algo == "exhaustive-contains") {
    // Read every bit directly: within each block, scan shifts of object 1
    // (trying both signs) until the signed point is found.
    const auto read_bits = [&](const QueryHandle& h) {
      std::vector<int> bits(static_cast<size_t>(ell), 0);
      for (int j = 1; j <= ell; ++j) {
        for (int s = 1; s <= n && bits[static_cast<size_t>(j - 1)] == 0; ++s) {
          const double a = static_cast<double>(static_cast<long long>(j) * n + s);
          if (h.contains(Point({a, 1.0}))) bits[static_cast<size_t>(j - 1)] = 1;
          else if (h.contains(Point({a, -1.0}))) bits[static_cast<size_t>(j - 1)] = -1;
        }
      }
      return bits;
    };
    const std::vector<int> x_bits = read_bits(handles[0]);
    const std::vector<int> y_bits = read_bits(handles[static_cast<size_t>(n)]);
    int dot = 0;
    for (int j = 0; j < ell; ++j) {
      dot += x_bits[static_cast<size_t>(j)] * y_bits[static_cast<size_t>(j)];
    }
    trial.recovered_dot = static_cast<double>(dot);
    trial.estimate = 2.5 * nd * static_cast<double>(ell) - 0.5 * nd * static_cast<double>(dot);
  } else {
    throw std::invalid_argument("run_lowerbound_trial: unknown algo '" + algo + "'");
  }

  if (algo == "klm") {
    trial.recovered_dot = (2.5 * nd * static_cast<double>(ell) - trial.estimate) * 2.0 / nd;
  }
  trial.queries = ledger.totals.total();
  trial.bit_accesses = inst.bit_access_events;
  trial.sign_correct = (trial.recovered_dot > 0.0) == (trial.true_dot > 0) &&
                       trial.recovered_dot != 0.0;
  return trial;
}

std::vector<AlignedBox> embed_discrete(std::span<const Point> lattice_points) {
  std::vector<AlignedBox> boxes;
  boxes.reserve(lattice_points.size());
  for (const Point& p : lattice_points) {
    std::vector<double> lo(p.coords);
    std::vector<double> hi(p.coords);
    for (auto& v : hi) v += 1.0;
    boxes.emplace_back(std::move(lo), std::move(hi));
  }
  return boxes;
}

}  // namespace boxvol
