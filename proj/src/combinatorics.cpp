#include "mixedq/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mixedq::combinatorics {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Partition::Partition(std::vector<std::vector<int>> blocks, int d)
    : blocks_(std::move(blocks)), d_(d) {
  require(d_ >= 1, "partition ground set must be nonempty");
  for (auto& b : blocks_) {
    require(!b.empty(), "partition block must be nonempty");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  block_of_.assign(d_, -1);
  int id = 0;
  for (const auto& b : blocks_) {
    for (int x : b) {
      require(x >= 1 && x <= d_, "partition element out of range");
      require(block_of_[x - 1] == -1, "partition blocks must be disjoint");
      block_of_[x - 1] = id;
    }
    ++id;
  }
  for (int x = 0; x < d_; ++x)
    require(block_of_[x] != -1, "partition blocks must cover the ground set");
}

bool Partition::operator==(const Partition& other) const {
  return d_ == other.d_ && blocks_ == other.blocks_;
}

PairPartition::PairPartition(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
  int d = 2 * static_cast<int>(pairs_.size());
  std::vector<bool> seen(d, false);
  for (auto& [e, z] : pairs_) {
    require(e >= 1 && z >= 1 && e <= d && z <= d, "pair element out of range");
    require(e < z, "pair must be stored as (e,z) with e < z");
    require(!seen[e - 1] && !seen[z - 1], "pair elements must be distinct");
    seen[e - 1] = seen[z - 1] = true;
  }
  std::sort(pairs_.begin(), pairs_.end());
}

SingletonPairPartition::SingletonPairPartition(std::vector<int> singletons,
                                               std::vector<std::pair<int, int>> pairs,
                                               int d)
    : singletons_(std::move(singletons)), pairs_(std::move(pairs)), d_(d) {
  require(d_ >= 0, "negative ground set");
  std::vector<bool> seen(d_, false);
  auto mark = [&](int x) {
    require(x >= 1 && x <= d_, "element out of range");
    require(!seen[x - 1], "elements must be disjoint");
    seen[x - 1] = true;
  };
  for (int s : singletons_) mark(s);
  for (auto& [e, z] : pairs_) {
    require(e < z, "pair must be stored as (e,z) with e < z");
    mark(e);
    mark(z);
  }
  for (int x = 0; x < d_; ++x)
    require(seen[x], "singletons and pairs must cover the ground set");
  std::sort(singletons_.begin(), singletons_.end());
  std::sort(pairs_.begin(), pairs_.end());
}

Partition SingletonPairPartition::as_partition() const {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(singletons_.size() + pairs_.size());
  for (int s : singletons_) blocks.push_back({s});
  for (auto& [e, z] : pairs_) blocks.push_back({e, z});
  return Partition(std::move(blocks), d_);
}

BipartitePairing::BipartitePairing(std::vector<int> matching)
    : matching_(std::move(matching)) {
  int s = static_cast<int>(matching_.size());
  std::vector<bool> seen(s, false);
  for (int v : matching_) {
    require(v >= 1 && v <= s, "matching value out of range");
    require(!seen[v - 1], "matching must be a bijection");
    seen[v - 1] = true;
  }
}

std::vector<PairPartition> enumerate_pair_partitions(int d, int cap) {
  require(d >= 0, "negative ground set");
  if (d % 2 != 0) throw std::invalid_argument("no pair partitions of odd ground set");
  if (d > cap)
    throw std::length_error("pair partition enumeration cap exceeded (d=" +
                            std::to_string(d) + ", cap=" + std::to_string(cap) + ")");

  std::vector<PairPartition> out;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(d, false);
  // Always pair the smallest unused element; this yields each partition once,
  // already sorted by first elements.
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    int e = 0;
    while (used[e]) ++e;
    used[e] = true;
    for (int z = e + 1; z < d; ++z) {
      if (used[z]) continue;
      used[z] = true;
      current.emplace_back(e + 1, z + 1);
      self(self, remaining - 2);
      current.pop_back();
      used[z] = false;
    }
    used[e] = false;
  };
  rec(rec, d);
  return out;
}

std::vector<SingletonPairPartition> enumerate_singleton_pair_partitions(int d, int cap) {
  require(d >= 0, "negative ground set");
  if (d > cap)
    throw std::length_error("singleton/pair enumeration cap exceeded (d=" +
                            std::to_string(d) + ", cap=" + std::to_string(cap) + ")");

  std::vector<SingletonPairPartition> out;
  std::vector<int> singles;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(d, false);
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(singles, current, d);
      return;
    }
    int e = 0;
    while (used[e]) ++e;
    used[e] = true;
    singles.push_back(e + 1);
    self(self, remaining - 1);
    singles.pop_back();
    for (int z = e + 1; z < d; ++z) {
      if (used[z]) continue;
      used[z] = true;
      current.emplace_back(e + 1, z + 1);
      self(self, remaining - 2);
      current.pop_back();
      used[z] = false;
    }
    used[e] = false;
  };
  rec(rec, d);
  return out;
}

Partition partition_of_vector(const std::vector<int>& i) {
  require(!i.empty(), "partition of empty index vector is undefined");
  int d = static_cast<int>(i.size());
  std::vector<std::vector<int>> blocks;
  std::vector<int> value_of_block;
  for (int k = 0; k < d; ++k) {
    require(i[k] >= 1, "index vector entries must be positive");
    bool placed = false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (value_of_block[b] == i[k]) {
        blocks[b].push_back(k + 1);
        placed = true;
        break;
      }
    }
    if (!placed) {
      blocks.push_back({k + 1});
      value_of_block.push_back(i[k]);
    }
  }
  return Partition(std::move(blocks), d);
}

bool refines(const Partition& sigma, const Partition& pi) {
  require(sigma.ground_size() == pi.ground_size(),
          "refines: mismatched ground set sizes");
  for (const auto& b : sigma.blocks()) {
    int target = pi.block_of(b.front());
    for (int x : b)
      if (pi.block_of(x) != target) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> crossings(const PairPartition& sigma) {
  const auto& p = sigma.pairs();
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t l = k + 1; l < p.size(); ++l)
      // e_k < e_l is automatic from the sort order.
      if (p[k].first < p[l].first && p[l].first < p[k].second &&
          p[k].second < p[l].second)
        out.emplace_back(static_cast<int>(k), static_cast<int>(l));
  return out;
}

Crossings12 crossing_sets_12(const SingletonPairPartition& sigma) {
  Crossings12 out;
  const auto& p = sigma.pairs();
  const auto& s = sigma.singletons();
  for (std::size_t k = 0; k < p.size(); ++k)
    for (std::size_t l = k + 1; l < p.size(); ++l)
      if (p[k].first < p[l].first && p[l].first < p[k].second &&
          p[k].second < p[l].second)
        out.pair_pair.emplace_back(static_cast<int>(k), static_cast<int>(l));
  for (std::size_t r = 0; r < p.size(); ++r)
    for (std::size_t t = 0; t < s.size(); ++t)
      if (p[r].first < s[t] && s[t] < p[r].second)
        out.pair_singleton.emplace_back(static_cast<int>(r), static_cast<int>(t));
  return out;
}

std::vector<BipartitePairing> enumerate_bipartite_pairings(int s, int cap) {
  require(s >= 0, "negative size");
  if (s > cap)
    throw std::length_error("bipartite pairing enumeration cap exceeded (s=" +
                            std::to_string(s) + ", cap=" + std::to_string(cap) + ")");
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<BipartitePairing> out;
  do {
    out.emplace_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::pair<int, int>> bipartite_crossings(const BipartitePairing& sigma_b) {
  const auto& pi = sigma_b.matching();
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < pi.size(); ++k)
    for (std::size_t l = k + 1; l < pi.size(); ++l)
      if (pi[k] > pi[l]) out.emplace_back(static_cast<int>(k) + 1, static_cast<int>(l) + 1);
  return out;
}

}  // namespace mixedq::combinatorics
