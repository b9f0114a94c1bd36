#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "mixedq/combinatorics.hpp"
#include "mixedq/rng.hpp"

using namespace mixedq;
using namespace mixedq::combinatorics;

namespace {

// Random set partition of [d] via a restricted growth string.
Partition random_partition(int d, Rng& rng) {
  std::vector<int> rgs(d);
  int blocks = 1;
  rgs[0] = 0;
  for (int k = 1; k < d; ++k) {
    rgs[k] = static_cast<int>(rng.uniform_int(0, blocks));
    if (rgs[k] == blocks) ++blocks;
  }
  std::vector<std::vector<int>> bs(blocks);
  for (int k = 0; k < d; ++k) bs[rgs[k]].push_back(k + 1);
  return Partition(bs, d);
}

// Reference refinement test straight from the definition.
bool refines_brute(const Partition& sigma, const Partition& pi) {
  for (const auto& b : sigma.blocks()) {
    bool inside = false;
    for (const auto& c : pi.blocks()) {
      if (std::includes(c.begin(), c.end(), b.begin(), b.end())) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pair partition counts follow the double factorial") {
  CHECK(enumerate_pair_partitions(0).size() == 1);
  CHECK(enumerate_pair_partitions(2).size() == 1);
  CHECK(enumerate_pair_partitions(4).size() == 3);
  CHECK(enumerate_pair_partitions(6).size() == 15);
  CHECK(enumerate_pair_partitions(8).size() == 105);
  CHECK_THROWS_AS(enumerate_pair_partitions(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_pair_partitions(18), std::length_error);
}

TEST_CASE("singleton-pair partition counts are the involution numbers") {
  const int expected[] = {1, 1, 2, 4, 10, 26, 76};
  for (int d = 0; d <= 6; ++d)
    CHECK(enumerate_singleton_pair_partitions(d).size() ==
          static_cast<std::size_t>(expected[d]));
}

TEST_CASE("enumerated pair partitions are distinct and well-formed") {
  std::set<std::vector<std::pair<int, int>>> seen;
  for (const auto& sigma : enumerate_pair_partitions(6)) {
    CHECK(sigma.ground_size() == 6);
    for (std::size_t k = 0; k + 1 < sigma.pairs().size(); ++k)
      CHECK(sigma.pairs()[k].first < sigma.pairs()[k + 1].first);
    for (const auto& [e, z] : sigma.pairs()) CHECK(e < z);
    seen.insert(sigma.pairs());
  }
  CHECK(seen.size() == 15);
}

TEST_CASE("crossings of small pair partitions") {
  using P = std::vector<std::pair<int, int>>;
  CHECK(crossings(PairPartition({{1, 2}, {3, 4}})).empty());
  CHECK(crossings(PairPartition({{1, 4}, {2, 3}})).empty());  // nested
  CHECK(crossings(PairPartition({{1, 3}, {2, 4}})) == P{{0, 1}});
  // Three mutually crossing pairs.
  CHECK(crossings(PairPartition({{1, 4}, {2, 5}, {3, 6}})) ==
        P{{0, 1}, {0, 2}, {1, 2}});
  // One crossing among three pairs.
  CHECK(crossings(PairPartition({{1, 2}, {3, 5}, {4, 6}})) == P{{1, 2}});
}

TEST_CASE("pair/singleton crossings require strict containment") {
  // Singleton 4 sits inside the pair (3,5); singletons 1 and 2 do not.
  SingletonPairPartition sigma({1, 2, 4}, {{3, 5}}, 5);
  auto c = crossing_sets_12(sigma);
  CHECK(c.pair_pair.empty());
  REQUIRE(c.pair_singleton.size() == 1);
  CHECK(c.pair_singleton[0] == std::pair<int, int>{0, 2});

  // A singleton at the left endpoint's position is impossible, but one just
  // outside the pair must not count.
  auto c2 = crossing_sets_12(SingletonPairPartition({1, 4}, {{2, 3}}, 4));
  CHECK(c2.pair_singleton.empty());
}

TEST_CASE("partition of an index vector groups equal labels") {
  Partition p = partition_of_vector({2, 4, 7, 4, 7});
  REQUIRE(p.blocks().size() == 3);
  CHECK(p.blocks()[0] == std::vector<int>{1});
  CHECK(p.blocks()[1] == std::vector<int>{2, 4});
  CHECK(p.blocks()[2] == std::vector<int>{3, 5});
  CHECK(p.block_of(2) == p.block_of(4));
  CHECK(p.block_of(1) != p.block_of(3));
}

TEST_CASE("partition constructor validates and normalizes") {
  CHECK_THROWS_AS(Partition({{1, 2}, {2, 3}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Partition({{1, 2}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Partition({{1, 4}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(Partition({{1}, {}}, 1), std::invalid_argument);
  // Blocks arrive unsorted and out of order; normalization is canonical.
  Partition p({{3, 1}, {2}}, 3);
  CHECK(p.blocks()[0] == std::vector<int>{1, 3});
  CHECK(p.blocks()[1] == std::vector<int>{2});
  CHECK(p == Partition({{2}, {1, 3}}, 3));
}

TEST_CASE("refinement matches the brute-force definition on random pairs") {
  Rng rng(7);
  Partition one_block({{1, 2, 3, 4, 5, 6}}, 6);
  Partition singletons({{1}, {2}, {3}, {4}, {5}, {6}}, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Partition a = random_partition(6, rng);
    Partition b = random_partition(6, rng);
    CHECK(refines(a, b) == refines_brute(a, b));
    CHECK(refines(a, a));
    CHECK(refines(singletons, a));
    CHECK(refines(a, one_block));
  }
}

TEST_CASE("bipartite pairings enumerate all permutations") {
  CHECK(enumerate_bipartite_pairings(0).size() == 1);
  CHECK(enumerate_bipartite_pairings(1).size() == 1);
  CHECK(enumerate_bipartite_pairings(3).size() == 6);
  CHECK(enumerate_bipartite_pairings(4).size() == 24);
  CHECK_THROWS_AS(enumerate_bipartite_pairings(9), std::length_error);
  CHECK_THROWS_AS(BipartitePairing({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("bipartite crossings are the inversions of the matching") {
  CHECK(bipartite_crossings(BipartitePairing({1, 2, 3})).empty());
  auto c = bipartite_crossings(BipartitePairing({2, 1}));
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::pair<int, int>{1, 2});

  Rng rng(11);
  std::vector<int> pi{1, 2, 3, 4, 5, 6};
  for (int trial = 0; trial < 50; ++trial) {
    for (int k = 5; k > 0; --k)
      std::swap(pi[k], pi[rng.uniform_int(0, k)]);
    std::set<std::pair<int, int>> expected;
    for (int k = 1; k <= 6; ++k)
      for (int l = k + 1; l <= 6; ++l)
        if (pi[k - 1] > pi[l - 1]) expected.insert({k, l});
    auto got = bipartite_crossings(BipartitePairing(pi));
    CHECK(std::set<std::pair<int, int>>(got.begin(), got.end()) == expected);
  }
}

TEST_CASE("singleton-pair partitions convert to general partitions") {
  SingletonPairPartition sigma({2}, {{1, 3}}, 3);
  Partition p = sigma.as_partition();
  REQUIRE(p.blocks().size() == 2);
  CHECK(p.blocks()[0] == std::vector<int>{1, 3});
  CHECK(p.blocks()[1] == std::vector<int>{2});
  CHECK_THROWS_AS(SingletonPairPartition({1}, {{1, 2}}, 2), std::invalid_argument);
  CHECK_THROWS_AS(SingletonPairPartition({}, {{2, 2}}, 2), std::invalid_argument);
}
