#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mixedq/moments.hpp"
#include "mixedq/structure_matrix.hpp"

// Truncated Fock space over N generators up to degree D: the Wick words
// w(i), |i| <= D, as an abstract basis, with the Gram matrix of their inner
// products and creation/annihilation/generator matrices in that basis.
// Creation out of the top degree is projected to zero, so operator
// identities are only asserted on degrees <= D-1.

namespace mixedq::fock {

// All words of length 0..D over [N], degree-major, lexicographic within a
// degree. Index 0 is the vacuum (empty word).
class FockBasis {
 public:
  FockBasis(int N, int D, long long cap = 20000);

  int N() const { return N_; }
  int D() const { return D_; }
  int total_words() const { return static_cast<int>(words_.size()); }
  int degree_size(int s) const;   // N^s
  int degree_offset(int s) const; // global index of the first degree-s word

  const Word& word_at(int global_index) const { return words_[global_index]; }
  int index_in_degree(const Word& i) const;  // position within its degree block
  int global_index(const Word& i) const;

 private:
  int N_, D_;
  std::vector<Word> words_;
  std::vector<int> offsets_;
};

// Coefficient vector with one segment per degree.
using GradedVector = std::vector<Eigen::VectorXd>;

GradedVector zero_vector(const FockBasis& basis);
GradedVector vacuum_vector(const FockBasis& basis);

// Graded operator: an optional block per source degree for each of the
// three degree shifts -1, 0, +1. Creation is pure +1, annihilation pure -1,
// the number operator pure 0; a generator carries both +1 and -1 parts.
class FockOperator {
 public:
  explicit FockOperator(const FockBasis& basis);

  const FockBasis& basis() const { return *basis_; }

  // raise(s): degree s -> s+1 (defined for s <= D-1); lower(s): s -> s-1
  // (s >= 1); diag(s): s -> s. Unset blocks act as zero.
  std::optional<Eigen::MatrixXd>& raise(int s) { return raise_[s]; }
  std::optional<Eigen::MatrixXd>& lower(int s) { return lower_[s]; }
  std::optional<Eigen::MatrixXd>& diag(int s) { return diag_[s]; }
  const std::optional<Eigen::MatrixXd>& raise(int s) const { return raise_[s]; }
  const std::optional<Eigen::MatrixXd>& lower(int s) const { return lower_[s]; }
  const std::optional<Eigen::MatrixXd>& diag(int s) const { return diag_[s]; }

  GradedVector apply(const GradedVector& v) const;

 private:
  const FockBasis* basis_;
  std::vector<std::optional<Eigen::MatrixXd>> raise_, lower_, diag_;
};

// c_j: w(i) -> w(j (+) i) (prepend), degree D truncated to 0.
FockOperator creation(int j, const FockBasis& basis);

// a_j: w(i) -> sum_l delta_{j,i_l} prod_{r<l} q(i_r, i_l) w(i minus i_l).
FockOperator annihilation(const StructureMatrix& Q, int j, const FockBasis& basis);

// s_j = c_j + a_j.
FockOperator generator(const StructureMatrix& Q, int j, const FockBasis& basis);

// A w(i) = |i| w(i); T_t w(i) = e^{-t|i|} w(i), t >= 0.
FockOperator number_operator(const FockBasis& basis);
FockOperator ou_semigroup(const FockBasis& basis, double t);

// Per-degree Gram matrix of wick_inner values. Eigenvalues within tol of 0
// count as kernel (the |q_ij| = 1 degenerations); an eigenvalue below -tol
// is a hard error, since the inner product must be positive semidefinite
// whenever the crossing convention is right.
struct GramMatrix {
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<int> kernel_dims;
  double min_eigenvalue = 0.0;
};

GramMatrix gram(const StructureMatrix& Q, const FockBasis& basis, double tol = 1e-10);

// Moore-Penrose inverse of a Gram block, inverting only eigenvalues beyond
// tol (quotient-space inverse for degenerate couplings).
Eigen::MatrixXd pseudo_inverse_block(const GramMatrix& g, int s, double tol = 1e-10);

// Norm induced by the (possibly degenerate) Gram form, clipped at zero.
double gram_norm(const GramMatrix& g, const GradedVector& v);

struct CommutationReport {
  bool pass = true;
  double max_residual = 0.0;
  int worst_j = 0, worst_k = 0, worst_degree = 0;
};

// Checks a_k c_j - q(j,k) c_j a_k = delta_{jk} on degrees <= D-1 for all
// j,k. Custom annihilators may be supplied (negative controls).
CommutationReport verify_commutation(const StructureMatrix& Q, const FockBasis& basis,
                                     double tol = 1e-12,
                                     const std::vector<FockOperator>* annihilators = nullptr);

struct AdjointReport {
  bool pass = true;
  double max_residual = 0.0;
  int worst_j = 0, worst_degree = 0;
};

// Checks C_j^T G_{s+1} = G_s A_j on degrees s <= D-1: creation and
// annihilation are mutual adjoints for the Gram inner product.
AdjointReport verify_adjoint(const StructureMatrix& Q, const FockBasis& basis,
                             const GramMatrix& g, double tol = 1e-12);

// Applies s_{i_1} ... s_{i_d} to the vacuum by matrix action and compares
// against the Wick decomposition sum_{sigma} f_sigma(i) e_{i_np}.
bool wick_vector_check(const StructureMatrix& Q, const FockBasis& basis, const Word& i,
                       double tol = 1e-12, double* max_diff = nullptr);

// <vacuum, s_{i_1} ... s_{i_d} vacuum> in the Gram form (the degree-0 Gram
// block is 1, so this is the vacuum coefficient after application).
double vacuum_expectation(const StructureMatrix& Q, const FockBasis& basis, const Word& i);

// Row-major CSV dumps with degree-tagged '#' headers.
void dump_gram_csv(const GramMatrix& g, std::ostream& out);
void dump_operator_csv(const FockOperator& op, std::ostream& out);

}  // namespace mixedq::fock
