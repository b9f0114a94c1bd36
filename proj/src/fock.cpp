#include "mixedq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mixedq::fock {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

FockBasis::FockBasis(int N, int D, long long cap) : N_(N), D_(D) {
  require(N_ >= 1, "basis needs N >= 1");
  require(D_ >= 0, "basis needs D >= 0");
  long long total = 0, block = 1;
  for (int s = 0; s <= D_; ++s) {
    total += block;
    if (total > cap)
      throw std::length_error("Fock basis would hold " + std::to_string(total) +
                              "+ words, over cap " + std::to_string(cap));
    block *= N_;
  }
  offsets_.resize(D_ + 2);
  offsets_[0] = 0;
  words_.reserve(static_cast<std::size_t>(total));
  Word w;
  for (int s = 0; s <= D_; ++s) {
    offsets_[s + 1] = offsets_[s] + degree_size(s);
    // lexicographic enumeration of [N]^s via an odometer on digits
    w.assign(s, 1);
    int count = degree_size(s);
    for (int c = 0; c < count; ++c) {
      words_.push_back(w);
      for (int t = s - 1; t >= 0; --t) {
        if (++w[t] <= N_) break;
        w[t] = 1;
      }
    }
  }
}

int FockBasis::degree_size(int s) const {
  int n = 1;
  for (int t = 0; t < s; ++t) n *= N_;
  return n;
}

int FockBasis::degree_offset(int s) const {
  require(s >= 0 && s <= D_, "degree out of range");
  return offsets_[s];
}

int FockBasis::index_in_degree(const Word& i) const {
  int idx = 0;
  for (int v : i) {
    require(v >= 1 && v <= N_, "label out of range 1..N");
    idx = idx * N_ + (v - 1);
  }
  return idx;
}

int FockBasis::global_index(const Word& i) const {
  require(static_cast<int>(i.size()) <= D_, "word longer than the degree cutoff");
  return degree_offset(static_cast<int>(i.size())) + index_in_degree(i);
}

GradedVector zero_vector(const FockBasis& basis) {
  GradedVector v(basis.D() + 1);
  for (int s = 0; s <= basis.D(); ++s)
    v[s] = Eigen::VectorXd::Zero(basis.degree_size(s));
  return v;
}

GradedVector vacuum_vector(const FockBasis& basis) {
  GradedVector v = zero_vector(basis);
  v[0](0) = 1.0;
  return v;
}

FockOperator::FockOperator(const FockBasis& basis)
    : basis_(&basis),
      raise_(basis.D() + 1),
      lower_(basis.D() + 1),
      diag_(basis.D() + 1) {}

GradedVector FockOperator::apply(const GradedVector& v) const {
  const int D = basis_->D();
  require(static_cast<int>(v.size()) == D + 1, "graded vector has wrong shape");
  GradedVector out = zero_vector(*basis_);
  for (int s = 0; s <= D; ++s) {
    if (s + 1 <= D && raise_[s]) out[s + 1] += *raise_[s] * v[s];
    if (s >= 1 && lower_[s]) out[s - 1] += *lower_[s] * v[s];
    if (diag_[s]) out[s] += *diag_[s] * v[s];
  }
  return out;
}

FockOperator creation(int j, const FockBasis& basis) {
  require(j >= 1 && j <= basis.N(), "generator index out of range");
  FockOperator op(basis);
  for (int s = 0; s < basis.D(); ++s) {
    Eigen::MatrixXd block =
        Eigen::MatrixXd::Zero(basis.degree_size(s + 1), basis.degree_size(s));
    for (int c = 0; c < basis.degree_size(s); ++c) {
      Word w = basis.word_at(basis.degree_offset(s) + c);
      w.insert(w.begin(), j);
      block(basis.index_in_degree(w), c) = 1.0;
    }
    op.raise(s) = std::move(block);
  }
  return op;
}

FockOperator annihilation(const StructureMatrix& Q, int j, const FockBasis& basis) {
  require(j >= 1 && j <= basis.N(), "generator index out of range");
  require(Q.size() == basis.N(), "structure matrix size must match the basis");
  FockOperator op(basis);
  for (int s = 1; s <= basis.D(); ++s) {
    Eigen::MatrixXd block =
        Eigen::MatrixXd::Zero(basis.degree_size(s - 1), basis.degree_size(s));
    for (int c = 0; c < basis.degree_size(s); ++c) {
      const Word& w = basis.word_at(basis.degree_offset(s) + c);
      for (int l = 0; l < s; ++l) {
        if (w[l] != j) continue;
        double coef = 1.0;
        for (int r = 0; r < l; ++r) coef *= Q.q(w[r], w[l]);
        Word shorter = w;
        shorter.erase(shorter.begin() + l);
        block(basis.index_in_degree(shorter), c) += coef;
      }
    }
    op.lower(s) = std::move(block);
  }
  return op;
}

FockOperator generator(const StructureMatrix& Q, int j, const FockBasis& basis) {
  FockOperator op = creation(j, basis);
  FockOperator a = annihilation(Q, j, basis);
  for (int s = 1; s <= basis.D(); ++s) op.lower(s) = std::move(a.lower(s));
  return op;
}

FockOperator number_operator(const FockBasis& basis) {
  FockOperator op(basis);
  for (int s = 0; s <= basis.D(); ++s)
    op.diag(s) = static_cast<double>(s) *
                 Eigen::MatrixXd::Identity(basis.degree_size(s), basis.degree_size(s));
  return op;
}

FockOperator ou_semigroup(const FockBasis& basis, double t) {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be >= 0");
  FockOperator op(basis);
  for (int s = 0; s <= basis.D(); ++s)
    op.diag(s) = std::exp(-t * s) *
                 Eigen::MatrixXd::Identity(basis.degree_size(s), basis.degree_size(s));
  return op;
}

GramMatrix gram(const StructureMatrix& Q, const FockBasis& basis, double tol) {
  require(Q.size() == basis.N(), "structure matrix size must match the basis");
  GramMatrix g;
  g.blocks.resize(basis.D() + 1);
  g.kernel_dims.assign(basis.D() + 1, 0);
  g.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= basis.D(); ++s) {
    const int n = basis.degree_size(s);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
    // Words with different label multisets are orthogonal, so group by the
    // sorted word and only fill within groups.
    std::map<Word, std::vector<int>> groups;
    for (int c = 0; c < n; ++c) {
      Word key = basis.word_at(basis.degree_offset(s) + c);
      std::sort(key.begin(), key.end());
      groups[key].push_back(c);
    }
    for (const auto& [key, members] : groups) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        const Word& wa = basis.word_at(basis.degree_offset(s) + members[a]);
        for (std::size_t b = a; b < members.size(); ++b) {
          const Word& wb = basis.word_at(basis.degree_offset(s) + members[b]);
          double v = wick_inner(Q, wa, wb);
          block(members[a], members[b]) = v;
          block(members[b], members[a]) = v;
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
    for (int t = 0; t < n; ++t) {
      double lam = es.eigenvalues()(t);
      g.min_eigenvalue = std::min(g.min_eigenvalue, lam);
      if (std::abs(lam) <= tol) ++g.kernel_dims[s];
    }
    g.blocks[s] = std::move(block);
  }
  if (g.min_eigenvalue < -tol)
    throw std::runtime_error(
        "Gram matrix has eigenvalue " + std::to_string(g.min_eigenvalue) +
        " below -tolerance; the crossing convention is inconsistent");
  return g;
}

Eigen::MatrixXd pseudo_inverse_block(const GramMatrix& g, int s, double tol) {
  const Eigen::MatrixXd& block = g.blocks.at(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
  Eigen::VectorXd inv = es.eigenvalues();
  for (int t = 0; t < inv.size(); ++t)
    inv(t) = std::abs(inv(t)) <= tol ? 0.0 : 1.0 / inv(t);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

double gram_norm(const GramMatrix& g, const GradedVector& v) {
  double sq = 0.0;
  for (std::size_t s = 0; s < v.size() && s < g.blocks.size(); ++s)
    sq += v[s].dot(g.blocks[s] * v[s]);
  return std::sqrt(std::max(sq, 0.0));
}

CommutationReport verify_commutation(const StructureMatrix& Q, const FockBasis& basis,
                                     double tol,
                                     const std::vector<FockOperator>* annihilators) {
  require(Q.size() == basis.N(), "structure matrix size must match the basis");
  require(basis.D() >= 2, "commutation check needs D >= 2");
  const int N = basis.N(), D = basis.D();
  std::vector<FockOperator> cs, as;
  for (int j = 1; j <= N; ++j) cs.push_back(creation(j, basis));
  if (annihilators) {
    require(static_cast<int>(annihilators->size()) == N,
            "need one annihilator per generator");
  } else {
    for (int j = 1; j <= N; ++j) as.push_back(annihilation(Q, j, basis));
  }
  const std::vector<FockOperator>& A = annihilators ? *annihilators : as;

  CommutationReport report;
  for (int j = 1; j <= N; ++j) {
    for (int k = 1; k <= N; ++k) {
      for (int s = 0; s <= D - 1; ++s) {
        const int n = basis.degree_size(s);
        Eigen::MatrixXd M = *A[k - 1].lower(s + 1) * *cs[j - 1].raise(s);
        if (s >= 1) M -= Q.q(j, k) * (*cs[j - 1].raise(s - 1) * *A[k - 1].lower(s));
        if (j == k) M -= Eigen::MatrixXd::Identity(n, n);
        double resid = M.cwiseAbs().maxCoeff();
        if (resid > report.max_residual) {
          report.max_residual = resid;
          report.worst_j = j;
          report.worst_k = k;
          report.worst_degree = s;
        }
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

AdjointReport verify_adjoint(const StructureMatrix& Q, const FockBasis& basis,
                             const GramMatrix& g, double tol) {
  require(Q.size() == basis.N(), "structure matrix size must match the basis");
  AdjointReport report;
  for (int j = 1; j <= basis.N(); ++j) {
    FockOperator c = creation(j, basis);
    FockOperator a = annihilation(Q, j, basis);
    for (int s = 0; s <= basis.D() - 1; ++s) {
      Eigen::MatrixXd lhs = c.raise(s)->transpose() * g.blocks[s + 1];
      Eigen::MatrixXd rhs = g.blocks[s] * *a.lower(s + 1);
      double resid = (lhs - rhs).cwiseAbs().maxCoeff();
      if (resid > report.max_residual) {
        report.max_residual = resid;
        report.worst_j = j;
        report.worst_degree = s;
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

namespace {

GradedVector apply_generator_word(const StructureMatrix& Q, const FockBasis& basis,
                                  const Word& i) {
  check_labels(Q, i);
  require(static_cast<int>(i.size()) <= basis.D(),
          "word longer than the degree cutoff");
  std::vector<std::optional<FockOperator>> gens(basis.N() + 1);
  GradedVector v = vacuum_vector(basis);
  // The product s_{i_1}...s_{i_d} acts with the rightmost factor first.
  for (int l = static_cast<int>(i.size()) - 1; l >= 0; --l) {
    int j = i[l];
    if (!gens[j]) gens[j] = generator(Q, j, basis);
    v = gens[j]->apply(v);
  }
  return v;
}

}  // namespace

bool wick_vector_check(const StructureMatrix& Q, const FockBasis& basis, const Word& i,
                       double tol, double* max_diff) {
  GradedVector lhs = apply_generator_word(Q, basis, i);
  GradedVector rhs = zero_vector(basis);
  for (const auto& term : wick_decompose(Q, i).terms)
    rhs[term.i_np.size()](basis.index_in_degree(term.i_np)) += term.coefficient;
  double diff = 0.0;
  for (int s = 0; s <= basis.D(); ++s)
    diff = std::max(diff, (lhs[s] - rhs[s]).cwiseAbs().maxCoeff());
  if (max_diff) *max_diff = diff;
  return diff <= tol;
}

double vacuum_expectation(const StructureMatrix& Q, const FockBasis& basis,
                          const Word& i) {
  return apply_generator_word(Q, basis, i)[0](0);
}

namespace {

void dump_matrix(const Eigen::MatrixXd& m, std::ostream& out) {
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace

void dump_gram_csv(const GramMatrix& g, std::ostream& out) {
  for (std::size_t s = 0; s < g.blocks.size(); ++s) {
    out << "# degree=" << s << " dim=" << g.blocks[s].rows()
        << " kernel=" << g.kernel_dims[s] << "\n";
    dump_matrix(g.blocks[s], out);
  }
}

void dump_operator_csv(const FockOperator& op, std::ostream& out) {
  const int D = op.basis().D();
  for (int s = 0; s <= D; ++s) {
    if (op.raise(s) && s + 1 <= D) {
      out << "# part=raise from_degree=" << s << " rows=" << op.raise(s)->rows()
          << " cols=" << op.raise(s)->cols() << "\n";
      dump_matrix(*op.raise(s), out);
    }
    if (op.lower(s)) {
      out << "# part=lower from_degree=" << s << " rows=" << op.lower(s)->rows()
          << " cols=" << op.lower(s)->cols() << "\n";
      dump_matrix(*op.lower(s), out);
    }
    if (op.diag(s)) {
      out << "# part=diag from_degree=" << s << " rows=" << op.diag(s)->rows()
          << " cols=" << op.diag(s)->cols() << "\n";
      dump_matrix(*op.diag(s), out);
    }
  }
}

}  // namespace mixedq::fock
