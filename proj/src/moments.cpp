#include "mixedq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mixedq {

using combinatorics::SingletonPairPartition;

void check_labels(const StructureMatrix& Q, const Word& i) {
  for (int v : i)
    if (v < 1 || v > Q.size())
      throw std::invalid_argument("label out of range 1..N");
}

namespace {

// Recursive pairing of the smallest open position with every equal-label
// partner. Pairs are created with ascending first elements, so a new pair
// (e,z) crosses an earlier pair (e',z') exactly when e < z' < z, and the
// crossing weight is q(i[e'], i[e]). The running product is passed down,
// which keeps the enumeration linear in the number of admissible partial
// pairings instead of recomputing crossings at every leaf.
double paired_moment_sum(const StructureMatrix& Q, const Word& i,
                         std::vector<bool>& used,
                         std::vector<std::pair<int, int>>& pairs, int remaining,
                         double partial) {
  if (remaining == 0) return partial;
  const int d = static_cast<int>(i.size());
  int e = 0;
  while (used[e]) ++e;
  used[e] = true;
  double total = 0.0;
  for (int z = e + 1; z < d; ++z) {
    if (used[z] || i[z] != i[e]) continue;
    double w = partial;
    for (auto& [ep, zp] : pairs)
      if (ep < e && e < zp && zp < z) w *= Q.q(i[ep], i[e]);
    used[z] = true;
    pairs.emplace_back(e, z);
    total += paired_moment_sum(Q, i, used, pairs, remaining - 2, w);
    pairs.pop_back();
    used[z] = false;
  }
  used[e] = false;
  return total;
}

}  // namespace

double moment(const StructureMatrix& Q, const Word& i) {
  check_labels(Q, i);
  const int d = static_cast<int>(i.size());
  if (d % 2 != 0) return 0.0;
  if (d == 0) return 1.0;
  std::vector<bool> used(d, false);
  std::vector<std::pair<int, int>> pairs;
  return paired_moment_sum(Q, i, used, pairs, d, 1.0);
}

namespace {

// Sum over label-preserving bijections pi of [s], weighting each inversion
// (l < k with pi(l) > pi(k)) by q(i[l], i[k]). Built up position by
// position with the inversion weight applied as each value is placed.
double inversion_sum(const StructureMatrix& Q, const Word& i, const Word& i2,
                     std::vector<int>& pi, std::vector<bool>& taken, int k,
                     double partial) {
  const int s = static_cast<int>(i.size());
  if (k == s) return partial;
  double total = 0.0;
  for (int v = 0; v < s; ++v) {
    if (taken[v] || i2[v] != i[k]) continue;
    double w = partial;
    for (int l = 0; l < k; ++l)
      if (pi[l] > v) w *= Q.q(i[l], i[k]);
    taken[v] = true;
    pi[k] = v;
    total += inversion_sum(Q, i, i2, pi, taken, k + 1, w);
    taken[v] = false;
  }
  return total;
}

}  // namespace

double wick_inner(const StructureMatrix& Q, const Word& i, const Word& i2) {
  check_labels(Q, i);
  check_labels(Q, i2);
  if (i.size() != i2.size()) return 0.0;
  Word a = i, b = i2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return 0.0;
  if (i.empty()) return 1.0;
  const int s = static_cast<int>(i.size());
  std::vector<int> pi(s, -1);
  std::vector<bool> taken(s, false);
  return inversion_sum(Q, i, i2, pi, taken, 0, 1.0);
}

double wick_coefficient(const StructureMatrix& Q, const Word& i,
                        const SingletonPairPartition& sigma) {
  check_labels(Q, i);
  if (sigma.ground_size() != static_cast<int>(i.size()))
    throw std::invalid_argument("wick_coefficient: partition/word size mismatch");
  for (auto& [e, z] : sigma.pairs())
    if (i[e - 1] != i[z - 1]) return 0.0;  // sigma does not refine sigma(i)
  auto cr = combinatorics::crossing_sets_12(sigma);
  double f = 1.0;  // empty products give 1
  const auto& pairs = sigma.pairs();
  const auto& singles = sigma.singletons();
  for (auto& [k, l] : cr.pair_pair)
    f *= Q.q(i[pairs[k].first - 1], i[pairs[l].first - 1]);
  for (auto& [r, t] : cr.pair_singleton)
    f *= Q.q(i[pairs[r].first - 1], i[singles[t] - 1]);
  return f;
}

Word reduced_word(const Word& i, const SingletonPairPartition& sigma) {
  if (sigma.ground_size() != static_cast<int>(i.size()))
    throw std::invalid_argument("reduced_word: partition/word size mismatch");
  std::vector<bool> drop(i.size(), false);
  for (auto& [e, z] : sigma.pairs()) drop[e - 1] = drop[z - 1] = true;
  Word out;
  for (std::size_t k = 0; k < i.size(); ++k)
    if (!drop[k]) out.push_back(i[k]);
  return out;
}

WickDecomposition wick_decompose(const StructureMatrix& Q, const Word& i, int cap) {
  check_labels(Q, i);
  const int d = static_cast<int>(i.size());
  WickDecomposition out;
  for (auto& sigma : combinatorics::enumerate_singleton_pair_partitions(d, cap)) {
    bool admissible = true;
    for (auto& [e, z] : sigma.pairs())
      if (i[e - 1] != i[z - 1]) {
        admissible = false;
        break;
      }
    if (!admissible) continue;
    out.terms.push_back({reduced_word(i, sigma), wick_coefficient(Q, i, sigma), sigma});
  }
  return out;
}

bool transference_moment_check(double q, const StructureMatrix& Qt, const Word& i,
                               double tol) {
  if (std::abs(q) > 1.0)
    throw std::invalid_argument("transference scalar must satisfy |q| <= 1");
  check_labels(Qt, i);
  const int d = static_cast<int>(i.size());

  // Left side: explicit enumeration, counting crossings and weighting each
  // by q * q~. Right side: moment() of the entrywise-scaled matrix. The two
  // routes share no code beyond the crossing definition.
  double lhs = 0.0;
  if (d % 2 == 0) {
    if (d == 0) {
      lhs = 1.0;
    } else {
      for (auto& sigma : combinatorics::enumerate_pair_partitions(d)) {
        bool admissible = true;
        for (auto& [e, z] : sigma.pairs())
          if (i[e - 1] != i[z - 1]) {
            admissible = false;
            break;
          }
        if (!admissible) continue;
        double w = 1.0;
        for (auto& [k, l] : combinatorics::crossings(sigma)) {
          int ek = sigma.pairs()[k].first, el = sigma.pairs()[l].first;
          w *= q * Qt.q(i[ek - 1], i[el - 1]);
        }
        lhs += w;
      }
    }
  }

  StructureMatrix scaled{Eigen::MatrixXd(q * Qt.entries())};
  double rhs = moment(scaled, i);
  return std::abs(lhs - rhs) <= tol;
}

}  // namespace mixedq
