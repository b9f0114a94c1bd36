#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mixedq/moments.hpp"
#include "mixedq/structure_matrix.hpp"

// Finite spin model: involutions x_i(k), i in [N], k in [m], commuting up to
// random signs eps((i,k),(j,l)) with mean q(i,j). Provides word reduction,
// traces, exact sign-expectations, finite-m CLT statistics, an explicit
// matrix representation, the derivation into the doubled algebra, and the
// gradient form.

namespace mixedq::spin {

// Generator index (row i, column k), both 1-based. Canonical order is
// lexicographic on (row, col).
struct Letter {
  int row;
  int col;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using SpinWord = std::vector<Letter>;

enum class Scheme { independent, tensor_repeated };

// Thrown when an exact enumeration would exceed its budget; the caller
// should switch to Monte Carlo mode.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Random sign table. Signs are derived pointwise from (seed, letter pair) by
// a hash, never from a sequential stream, so the table is identical whether
// it is materialized densely or evaluated lazily, and independent of
// evaluation order.
//
// The table distinguishes logical rows (1..rows()) from base rows
// (1..base_rows()): sign lookups reduce rows mod base_rows() first. With
// rows == base_rows this is the plain independent table; tensor_repeated
// tables and doubled() tables repeat the base pattern across row blocks.
// Two letters that coincide after row reduction always get sign -1; in
// particular eps(x,x) = -1.
class EpsilonTable {
 public:
  // Independent signs: P(eps = -1) = (1 - q(i,j))/2 per unordered pair.
  static EpsilonTable sample(const StructureMatrix& Q, int m, std::uint64_t seed);

  // Pattern repeated across n row blocks: eps((i+aN,k),(j+bN,l)) =
  // eps((i,k),(j,l)) with N = Q_base.size().
  static EpsilonTable sample_tensor_repeated(const StructureMatrix& Q_base, int n,
                                             int m, std::uint64_t seed);

  int rows() const { return rows_; }
  int base_rows() const { return base_q_.size(); }
  int m() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  Scheme scheme() const { return scheme_; }
  const StructureMatrix& base_q() const { return base_q_; }

  int sign(const Letter& a, const Letter& b) const;

  // Same base signs on a doubled logical row range; the extension used by
  // the derivation (the doubled coupling matrix is Q (x) (1 1; 1 1)).
  EpsilonTable doubled() const;

  // Same base signs on a different logical row range (rows must be a
  // positive multiple of base_rows()); doubled() is with_rows(2 * rows()).
  // Shrinking recovers the sub-table a conditional expectation targets.
  EpsilonTable with_rows(int rows) const;

  // Two tables index the same algebra (same signs everywhere).
  bool same_signs(const EpsilonTable& other) const;

  // Binary dump: "EPSv1" magic, then base_rows, rows, m, scheme, seed
  // (little-endian u32/u32/u32/u32/u64), then base signs packed row-major
  // over base generators as int8 +1/-1.
  void dump(std::ostream& out) const;

 private:
  EpsilonTable(StructureMatrix base_q, int rows, int m, std::uint64_t seed,
               Scheme scheme);

  int base_ordinal(const Letter& reduced) const {
    return (reduced.row - 1) * m_ + (reduced.col - 1);
  }
  int derived_sign(int g1, int g2) const;

  StructureMatrix base_q_;
  int rows_;
  int m_;
  std::uint64_t seed_;
  Scheme scheme_;
  std::vector<std::int8_t> dense_;  // empty when the table is lazy
};

struct ReducedWord {
  int sign;  // +1 or -1
  std::vector<Letter> letters;
};

// Canonical reduction: sort by adjacent transpositions, multiplying in
// eps(a,b) per swap, and cancel equal adjacent letters via x^2 = 1. The
// result is independent of the transposition schedule (tested, not assumed).
ReducedWord reduce(const SpinWord& word, const EpsilonTable& eps);

// Normalized trace of the word: the sign if it reduces to the empty word,
// else 0.
double trace(const SpinWord& word, const EpsilonTable& eps);

// Expectation of trace(word) over the sign distribution, computed
// symbolically: reduction collects eps factors as formal symbols; distinct
// symbols are independent, so the expectation is the product of q(i,j) over
// symbols of odd multiplicity (and -1 for symbols whose two letters
// coincide after row reduction, which are deterministic).
//
// row_period is the base row count for symbol identification and q lookup
// (0 means Q.size(), the independent case). Under tensor repetition the
// letters of a symbol are reduced mod row_period before identification.
double expected_trace(const SpinWord& word, const StructureMatrix& Q,
                      int row_period = 0);

inline constexpr long long kDefaultCltBudget = 1LL << 24;

// Per-realization CLT statistic m^{-d/2} sum_{k in [m]^d} trace(word(i,k)).
// Enumerates all m^d inner index vectors; throws BudgetError beyond the
// budget (use the Monte Carlo variant there).
double clt_statistic_exact(const EpsilonTable& eps, const Word& labels, int m,
                           long long budget = kDefaultCltBudget, int threads = 0);

// Unbiased Monte Carlo estimate of the same statistic from uniformly
// sampled inner index vectors.
double clt_statistic_monte_carlo(const EpsilonTable& eps, const Word& labels,
                                 int m, long long samples, std::uint64_t seed);

// Expectation-mode statistic: the exact mean of clt_statistic_exact over
// the sign distribution. Computed by grouping inner index vectors by their
// coincidence pattern (expected_trace depends only on that pattern), which
// turns the m^d sum into a sum over set partitions of [d] weighted by
// falling factorials m(m-1)...(m-b+1). Converges to moment(Q, labels) as
// m grows; as a function of 1/m it is a polynomial of degree <= d/2 - 1
// (all-even partitions only), so d/2 sample points determine the limit.
double clt_statistic_expected(const StructureMatrix& Q, const Word& labels, int m,
                              int row_period = 0);

// Ordinal of a letter in the canonical generator order, 0-based.
inline int letter_ordinal(const Letter& x, int m) {
  return (x.row - 1) * m + (x.col - 1);
}

// Dense generator matrices for the first G generators in canonical order:
// g_j acts on basis state b by flipping bit j and picking up the phase
// prod_{l<j, bit l set} eps(l,j). This realizes the Z-chain tensor
// construction (Z^eta factors left of an X factor); matrices are real
// symmetric involutions with the prescribed commutation signs, and every
// nonempty reduced product is traceless.
std::vector<Eigen::MatrixXd> matrix_representation(const EpsilonTable& eps, int G,
                                                   int cap = 12);

class SpinElement;

// Dense matrix of an element in the representation over the first G
// generators (G = 0 means all rows()*m() of them). Every letter of every
// word must fall among those G generators.
Eigen::MatrixXd represent(const SpinElement& f, int G = 0, int cap = 12);

// Linear combination of reduced words with real coefficients. Keys are
// canonically sorted distinct letter vectors; zero coefficients are not
// stored. Elements attached to tables with equal signs are compatible.
class SpinElement {
 public:
  using Key = std::vector<Letter>;
  using TermMap = std::map<Key, double>;

  explicit SpinElement(std::shared_ptr<const EpsilonTable> eps);
  static SpinElement scalar(std::shared_ptr<const EpsilonTable> eps, double c);
  static SpinElement from_word(std::shared_ptr<const EpsilonTable> eps,
                               const SpinWord& word, double c = 1.0);

  const std::shared_ptr<const EpsilonTable>& table() const { return eps_; }
  const TermMap& terms() const { return terms_; }
  void add_term(const Key& reduced_sorted, double c);

  SpinElement operator+(const SpinElement& other) const;
  SpinElement operator-(const SpinElement& other) const;
  SpinElement operator*(const SpinElement& other) const;
  SpinElement scaled(double c) const;
  SpinElement adjoint() const;

  double trace() const;  // coefficient of the empty word
  double norm2() const;  // sqrt(trace(f* f))
  bool same_terms(const SpinElement& other, double tol = 0.0) const;

  SpinElement apply_number() const;            // x_B -> |B| x_B
  SpinElement apply_sqrt_number() const;       // x_B -> sqrt(|B|) x_B
  SpinElement apply_ou(double t) const;        // x_B -> e^{-t|B|} x_B

  // Derivation into the doubled algebra: each word maps to the sum over its
  // letters of the word with that letter's row shifted by +rows(). Satisfies
  // the Leibniz rule.
  SpinElement derivation() const;

 private:
  std::shared_ptr<const EpsilonTable> eps_;
  TermMap terms_;
};

// Conditional expectation onto the subalgebra generated by rows 1..R where
// R = target->rows(): keeps exactly the reduced words without upper-row
// letters, re-attached to the target table. The element must live over a
// table extending the target's signs.
SpinElement conditional_expectation(const SpinElement& f,
                                    std::shared_ptr<const EpsilonTable> target);

// Gradient form Gamma(f,g) = (A(f*)g + f*A(g) - A(f*g)) / 2 with A the
// number operator. Equals conditional_expectation(derivation(f).adjoint() *
// derivation(g)) termwise; both routes are exposed so the identity can be
// checked rather than assumed.
SpinElement gradient_form(const SpinElement& f, const SpinElement& g);

}  // namespace mixedq::spin
