#include "mixedq/structure_matrix.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mixedq {

StructureMatrix::StructureMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
    throw std::invalid_argument("structure matrix must be square and nonempty");
  const int n = static_cast<int>(entries_.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = entries_(i, j);
      if (!std::isfinite(v)) {
        if (i == j)
          throw std::invalid_argument(
              "diagonal entries must be given explicitly (found non-finite q_" +
              std::to_string(i + 1) + std::to_string(i + 1) + ")");
        throw std::invalid_argument("structure matrix entries must be finite");
      }
      if (std::abs(v) > 1.0)
        throw std::invalid_argument("structure matrix entries must lie in [-1,1]");
      if (entries_(i, j) != entries_(j, i))
        throw std::invalid_argument("structure matrix must be exactly symmetric");
    }
  }
}

StructureMatrix StructureMatrix::constant(int N, double q) {
  if (N < 1) throw std::invalid_argument("need at least one generator");
  return StructureMatrix(Eigen::MatrixXd::Constant(N, N, q));
}

StructureMatrix StructureMatrix::free_product(const std::vector<int>& dims,
                                              const std::vector<double>& qs) {
  if (dims.size() != qs.size() || dims.empty())
    throw std::invalid_argument("free_product: need equal-length nonempty dims/qs");
  int total = 0;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("free_product: block dims must be >= 1");
    total += d;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(total, total);
  int off = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    m.block(off, off, dims[k], dims[k]).setConstant(qs[k]);
    off += dims[k];
  }
  return StructureMatrix(std::move(m));
}

StructureMatrix StructureMatrix::tensor_mixed(const std::vector<int>& h_dims,
                                              const std::vector<int>& k_dims,
                                              const std::vector<double>& qs,
                                              const std::vector<double>& ps) {
  std::size_t n = h_dims.size();
  if (k_dims.size() != n || qs.size() != n || ps.size() != n || n == 0)
    throw std::invalid_argument("tensor_mixed: need equal-length nonempty inputs");
  int total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (h_dims[k] < 0 || k_dims[k] < 0 || h_dims[k] + k_dims[k] < 1)
      throw std::invalid_argument("tensor_mixed: bad factor dimensions");
    total += h_dims[k] + k_dims[k];
  }
  // Entries across different factors default to 1 (those pairs commute in
  // the limit algebra); same-factor entries are overwritten below.
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(total, total, 1.0);
  int off = 0;
  for (std::size_t k = 0; k < n; ++k) {
    int dh = h_dims[k], dk = k_dims[k];
    m.block(off, off, dh, dh).setConstant(qs[k]);
    m.block(off + dh, off + dh, dk, dk).setConstant(ps[k]);
    m.block(off, off + dh, dh, dk).setZero();
    m.block(off + dh, off, dk, dh).setZero();
    off += dh + dk;
  }
  return StructureMatrix(std::move(m));
}

StructureMatrix StructureMatrix::tensor_identity(const StructureMatrix& Q, int n) {
  if (n < 1) throw std::invalid_argument("tensor_identity: n must be >= 1");
  const int N = Q.size();
  Eigen::MatrixXd m(N * n, N * n);
  for (int a = 0; a < N * n; ++a)
    for (int b = 0; b < N * n; ++b) m(a, b) = Q.entries()(a % N, b % N);
  return StructureMatrix(std::move(m));
}

StructureMatrix StructureMatrix::doubled(const StructureMatrix& Q) {
  return tensor_identity(Q, 2);
}

StructureMatrix StructureMatrix::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad structure matrix JSON: ") + e.what());
  }
  if (!j.contains("N") || !j.contains("entries"))
    throw std::invalid_argument("structure matrix JSON needs fields \"N\" and \"entries\"");
  int n = j.at("N").get<int>();
  const auto& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("structure matrix JSON: entries must be an NxN array");
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("structure matrix JSON: entries must be an NxN array");
    for (int k = 0; k < n; ++k) {
      const auto& cell = row.at(k);
      if (!cell.is_number())
        throw std::invalid_argument(
            "structure matrix JSON: every entry (including the diagonal) must be a number");
      m(i, k) = cell.get<double>();
    }
  }
  return StructureMatrix(std::move(m));
}

StructureMatrix StructureMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open structure matrix file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string StructureMatrix::to_json_text() const {
  nlohmann::json j;
  j["N"] = size();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < size(); ++k) row.push_back(entries_(i, k));
    rows.push_back(row);
  }
  j["entries"] = rows;
  return j.dump();
}

}  // namespace mixedq
