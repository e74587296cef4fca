#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "boxvol/geometry.hpp"
#include "boxvol/querymodel.hpp"
#include "boxvol/sampling.hpp"

namespace boxvol {

enum class Side { X, Y };
enum class GapSign { Positive, Negative };

/// A hidden Query-Gap-Hamming instance: the vectors x, y in {-1,+1}^ell,
/// one permutation of [n] per block and side, and a log of bit accesses
/// performed by the answering oracle.
struct HiddenInstance {
  int n = 0;
  int ell = 0;
  std::vector<int> x;                       // entries +-1
  std::vector<int> y;
  std::vector<std::vector<int>> pi;         // pi[j-1] is a permutation of 1..n
  std::vector<std::vector<int>> tau;

  mutable std::uint64_t bit_access_events = 0;
  mutable std::vector<std::uint8_t> x_read;  // distinct-bit flags, size ell
  mutable std::vector<std::uint8_t> y_read;

  int inner_product() const;
  void log_access(Side side, int j) const;  // j is 1-based
};

/// The block length the reduction uses for a given accuracy target:
/// floor(1 / (36 eps^2)).
int ell_from_epsilon(double epsilon);

/// Build an instance whose inner product is the smallest integer of the
/// requested sign with magnitude >= ceil(sqrt(ell)) and parity matching ell.
/// With random_vectors the vectors are drawn uniformly instead.
HiddenInstance build_instance(int n, int ell, GapSign sign, RandomStream& stream,
                              bool random_vectors = false);

/// The 2n hidden objects X_1..X_n, Y_1..Y_n as query objects. Their queries
/// are answered by the oracle rules (constant volume, obfuscated sampling,
/// block-decoded containment) and log bit accesses on the instance.
std::vector<std::unique_ptr<QueryObject>> make_hidden_objects(const HiddenInstance& inst);

/// The lattice points of one hidden object, materialized (test support).
std::vector<Point> materialize_points(const HiddenInstance& inst, Side side, int i);

/// Closed-form union cardinality (5/2) n ell - (1/2) n <x,y>.
long long union_cardinality(const HiddenInstance& inst);

/// Brute-force recount of the union of all 2n materialized objects.
/// Guarded at n * ell > 10^9.
long long union_cardinality_materialized(const HiddenInstance& inst);

/// One round of the permutation-guessing game.
struct GameRequest {
  bool is_probe = false;
  int i = 0;  // probe arguments, 1-based
  int s = 0;
};

/// Strategy callback: round index (0-based) and the answers so far.
using GameStrategy = std::function<GameRequest(int round, std::span<const bool> answers)>;

/// Simulate the game against a secret uniform permutation of [n]:
/// Random() answers yes with probability 1/(n+1); Probe(i,s) answers yes iff
/// the permutation maps i to s. Returns whether any answer was yes.
bool mini_game(int n, int rounds, const GameStrategy& strategy, RandomStream& stream);

/// Blow up lattice points into unit cubes; the union volume of the result
/// equals the number of distinct points.
std::vector<AlignedBox> embed_discrete(std::span<const Point> lattice_points);

/// Mode for drawing the hidden vectors.
enum class VectorMode { BoundaryPositive, BoundaryNegative, Random };

/// Outcome of one estimator run against a hidden instance.
struct LowerBoundTrial {
  int n = 0;
  int ell = 0;
  std::string algo;
  std::uint64_t queries = 0;
  std::uint64_t bit_accesses = 0;
  bool sign_correct = false;
  double estimate = 0.0;
  double recovered_dot = 0.0;
  int true_dot = 0;
};

/// Build a hidden instance and run one estimation strategy against it
/// through the query interface, recording query and bit-access counts.
/// algo is "klm" or "exhaustive-contains".
LowerBoundTrial run_lowerbound_trial(int n, int ell, const std::string& algo, VectorMode mode,
                                     std::uint64_t seed, std::uint64_t stream_id = 0);

}  // namespace boxvol
