#pragma once

#include <vector>

#include "mixedq/combinatorics.hpp"
#include "mixedq/structure_matrix.hpp"

// Closed-form combinatorial quantities attached to a structure matrix Q:
// limit moments of the mixed generators, Wick-word inner products, and the
// Wick decomposition of generator products. Everything is numeric double
// arithmetic; crossing products have at most d^2/4 factors, so identities
// are tested at 1e-12 rather than exactly.

namespace mixedq {

// Label vector i in [N]^s addressing generators; 1-based labels.
using Word = std::vector<int>;

void check_labels(const StructureMatrix& Q, const Word& i);

// One term of a Wick decomposition: the singleton positions survive as the
// reduced word i_np, the pair blocks contribute the scalar f_sigma(i).
struct WickTerm {
  Word i_np;
  double coefficient;
  combinatorics::SingletonPairPartition sigma;
};

struct WickDecomposition {
  std::vector<WickTerm> terms;
};

// Limit moment of x_{i_1} ... x_{i_d}: zero for odd d, otherwise the sum
// over pair partitions sigma <= sigma(i) of prod_{crossings} q(i(e_r), i(e_t)).
double moment(const StructureMatrix& Q, const Word& i);

// Inner product <w(i), w(i2)> of Wick words. Zero unless the words agree as
// multisets; otherwise a sum over label-matching bipartite pairings weighted
// by q over bipartite crossings (equivalently, over inversions of the
// matching permutation). For constant q this is the classical q-Fock Gram
// sum over permutation inversions.
double wick_inner(const StructureMatrix& Q, const Word& i, const Word& i2);

// f_sigma(i): the product of q(i(e_r), i(e_t)) over pair/pair and
// pair/singleton crossings of sigma. Returns 0 when sigma does not refine
// sigma(i), i.e. when some pair carries two different labels; an empty
// crossing set gives 1.
double wick_coefficient(const StructureMatrix& Q, const Word& i,
                        const combinatorics::SingletonPairPartition& sigma);

// Reduced word of sigma on i: drop the pair-block positions, keep order.
Word reduced_word(const Word& i, const combinatorics::SingletonPairPartition& sigma);

// Full decomposition of the generator product s_{i_1}...s_{i_d} into Wick
// words: one term per sigma in P_{1,2}(d) with sigma <= sigma(i).
WickDecomposition wick_decompose(const StructureMatrix& Q, const Word& i, int cap = 12);

// Checks the scalar transference identity
//   sum_{sigma <= sigma(i)} q^{|I(sigma)|} prod q~  ==  moment(q*Q~, i)
// to the given tolerance. Requires |q| <= 1 so that q*Q~ is again a valid
// structure matrix.
bool transference_moment_check(double q, const StructureMatrix& Qt, const Word& i,
                               double tol = 1e-12);

}  // namespace mixedq
