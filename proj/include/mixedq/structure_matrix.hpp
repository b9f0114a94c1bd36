#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace mixedq {

// Symmetric coupling matrix Q with entries q(i,j) in [-1,1]. The diagonal
// takes part in moments and Wick coefficients like any other entry, so it
// must be supplied explicitly; there is no implicit default.
//
// Indices are 1-based throughout, matching the label vectors.
class StructureMatrix {
 public:
  // Validates symmetry, range, and finiteness (a NaN is treated as a
  // missing entry and rejected).
  explicit StructureMatrix(Eigen::MatrixXd entries);

  int size() const { return static_cast<int>(entries_.rows()); }
  double q(int i, int j) const { return entries_(i - 1, j - 1); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  double max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

  // Constant coupling q on N generators.
  static StructureMatrix constant(int N, double q);

  // Free product structure: block k (size dims[k]) carries constant coupling
  // qs[k]; entries across different blocks are 0.
  static StructureMatrix free_product(const std::vector<int>& dims,
                                      const std::vector<double>& qs);

  // Mixed tensor structure over n factors laid out [H_1, K_1, H_2, K_2, ...]:
  // within H_k the coupling is qs[k], within K_k it is ps[k], across the H/K
  // halves of the same factor it is 0, and across different factors it is 1.
  static StructureMatrix tensor_mixed(const std::vector<int>& h_dims,
                                      const std::vector<int>& k_dims,
                                      const std::vector<double>& qs,
                                      const std::vector<double>& ps);

  // Repetition pattern Q (x) 1_n: entry (i + aN, j + bN) = q(i,j) on an
  // (N*n)-point index set.
  static StructureMatrix tensor_identity(const StructureMatrix& Q, int n);

  // The n = 2 case, used by the derivation into the doubled algebra.
  static StructureMatrix doubled(const StructureMatrix& Q);

  // JSON round trip, schema {"N": int, "entries": [[...], ...]}.
  static StructureMatrix from_json_text(const std::string& text);
  static StructureMatrix load(const std::string& path);
  std::string to_json_text() const;

 private:
  Eigen::MatrixXd entries_;
};

}  // namespace mixedq
