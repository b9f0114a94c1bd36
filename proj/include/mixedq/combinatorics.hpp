#pragma once

#include <utility>
#include <vector>

// Set partitions of {1,...,d} and their crossing statistics. Everything here
// is 1-based: ground sets, pair indices, permutation values. Values are
// immutable after construction and all functions are pure.

namespace mixedq::combinatorics {

// General partition of [d] into disjoint blocks. Blocks are sorted ascending
// and listed by least element; the constructor validates and normalizes.
class Partition {
 public:
  Partition(std::vector<std::vector<int>> blocks, int d);

  int ground_size() const { return d_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }

  // Block id (0-based position in blocks()) containing element x.
  int block_of(int x) const { return block_of_[x - 1]; }

  bool operator==(const Partition& other) const;

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;
  int d_;
};

// Pair partition of [d] (d even): pairs (e_k, z_k) with e_k < z_k, listed
// with e_1 < e_2 < ... so the pair index k is canonical.
class PairPartition {
 public:
  explicit PairPartition(std::vector<std::pair<int, int>> pairs);

  int ground_size() const { return 2 * static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// Partition of [d] into singletons and pairs only.
class SingletonPairPartition {
 public:
  SingletonPairPartition(std::vector<int> singletons,
                         std::vector<std::pair<int, int>> pairs, int d);

  int ground_size() const { return d_; }
  const std::vector<int>& singletons() const { return singletons_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  Partition as_partition() const;

 private:
  std::vector<int> singletons_;
  std::vector<std::pair<int, int>> pairs_;
  int d_;
};

// Perfect matching between a left copy {1..s} and a right copy {1~..s~},
// stored as the permutation pi with left k matched to right pi(k).
class BipartitePairing {
 public:
  explicit BipartitePairing(std::vector<int> matching);

  int size() const { return static_cast<int>(matching_.size()); }
  const std::vector<int>& matching() const { return matching_; }
  int image(int k) const { return matching_[k - 1]; }

 private:
  std::vector<int> matching_;
};

// Crossing data of a singleton/pair partition. pair_pair holds 0-based index
// pairs (k,l) into pairs() with e_k < e_l < z_k < z_l; pair_singleton holds
// (pair index r, singleton index t) with the singleton strictly inside the
// pair: e_r < position(t) < z_r.
struct Crossings12 {
  std::vector<std::pair<int, int>> pair_pair;
  std::vector<std::pair<int, int>> pair_singleton;
};

// Enumeration caps guard against accidental combinatorial explosions; they
// are arguments, not globals, so callers can raise them deliberately.
inline constexpr int kDefaultPairingCap = 16;
inline constexpr int kDefaultBipartiteCap = 8;

// All (d-1)!! pair partitions of [d]. Throws on odd d or d over the cap.
std::vector<PairPartition> enumerate_pair_partitions(int d, int cap = kDefaultPairingCap);

// All partitions of [d] into singletons and pairs; the count is the
// involution number of d.
std::vector<SingletonPairPartition> enumerate_singleton_pair_partitions(
    int d, int cap = kDefaultPairingCap);

// The kernel partition of an index vector: k,l share a block iff i_k == i_l.
Partition partition_of_vector(const std::vector<int>& i);

// True iff every block of sigma is contained in some block of pi.
bool refines(const Partition& sigma, const Partition& pi);

// Crossings I(sigma) = {(k,l) : e_k < e_l < z_k < z_l}, as 0-based index
// pairs into sigma.pairs() with k < l.
std::vector<std::pair<int, int>> crossings(const PairPartition& sigma);

// Pair/pair and pair/singleton crossings of a singleton-pair partition.
Crossings12 crossing_sets_12(const SingletonPairPartition& sigma);

// All s! bipartite pairings.
std::vector<BipartitePairing> enumerate_bipartite_pairings(int s, int cap = kDefaultBipartiteCap);

// Bipartite crossings under the calibrated orientation: the crossing set of
// the pairing with permutation pi is its inversion set {(k,l) : k < l,
// pi(k) > pi(l)} (1-based positions). The identity pairing has no crossings;
// this is the only orientation compatible with the q-Fock inner product
// <e_i (x) e_i, e_i (x) e_i> = 1 + q.
std::vector<std::pair<int, int>> bipartite_crossings(const BipartitePairing& sigma_b);

}  // namespace mixedq::combinatorics
