#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mixedq/rng.hpp"
#include "mixedq/spin_model.hpp"

// Schatten norms on the spin-model matrix representation and the semigroup
// inequality verifiers: hypercontractivity with sharpness witnesses,
// log-Sobolev, Riesz-transform and Khintchine ratios, and L_p Poincare.
// All traces are normalized (tr I = 1), so these are finite-model stand-ins
// for noncommutative L_p quantities.

namespace mixedq::analysis {

// (normalized trace of |f|^p)^{1/p} via an eigensolve of f^T f. Defined for
// any real matrix f and p >= 1.
double schatten_norm(const Eigen::MatrixXd& f, double p);

struct InequalityReport {
  std::string check;
  std::vector<std::pair<std::string, double>> params;  // insertion-ordered
  std::uint64_t seed = 0;
  int samples = 0;
  // Worst value over the run; its meaning per check: signed violation margin
  // for inequality suites (<= 0 means no violation), best gap for witness
  // searches, largest ratio for ratio suites.
  double worst = 0.0;
  std::string witness;
  bool pass = false;
};

// Random element with independent N(0,1) coefficients over every reduced
// word of length <= max_len in the first G generators (the documented
// sampling ensemble; word order is by length then lexicographic, so draws
// are reproducible). Set include_constant = false for mean-zero samples.
spin::SpinElement random_element(std::shared_ptr<const spin::EpsilonTable> eps,
                                 int G, int max_len, Rng& rng,
                                 bool include_constant = true);

// Checks ||T_t f||_r <= ||f||_p + slack over random f, plus exact
// attainment at f = 1. Requires the contractive regime
// e^{-2t} <= (p-1)/(r-1) (any t when r <= p covers it automatically).
InequalityReport hypercontractivity_check(std::shared_ptr<const spin::EpsilonTable> eps,
                                          int G, double p, double r, double t,
                                          int samples, std::uint64_t seed,
                                          double slack = 1e-10);

// Searches f = 1 + s x_1 for a violation of ||T_t f||_r <= ||f||_p, which
// must exist beyond the hypercontractivity threshold. Requires
// e^{-2t} >= (1+margin) (p-1)/(r-1); refuses p >= r (threshold >= 1 is
// unreachable for t >= 0).
InequalityReport hypercontractivity_witness(std::shared_ptr<const spin::EpsilonTable> eps,
                                            int G, double p, double r, double t,
                                            double margin = 0.05);

// tau(|f|^2 ln |f|^2) - ||f||_2^2 ln ||f||_2^2  vs  2 tau(f A f*), as
// (lhs, rhs).
std::pair<double, double> log_sobolev_sides(const spin::SpinElement& f, int G = 0);

InequalityReport log_sobolev_check(std::shared_ptr<const spin::EpsilonTable> eps,
                                   int G, int samples, std::uint64_t seed,
                                   double slack = 1e-8);

// Both sides of the Riesz equivalence for mean-zero f:
//   low_side  = ||A^{1/2} f||_p / ||delta f||_p
//   high_side = ||delta f||_p / ||A^{1/2} f||_p
// delta f is measured in the representation of the doubled algebra. At
// p = 2 both sides are exactly 1.
struct RieszRatio {
  double low_side;
  double high_side;
};
RieszRatio riesz_ratio(const spin::SpinElement& f, double p);

// ||g||_p / max(||E(g* g)^{1/2}||_p, ||E(g g*)^{1/2}||_p) for g in the span
// of words with exactly one upper-row letter (the derivation image space);
// p >= 2. The ratio is always >= 1 up to eigensolve error because E is a
// contraction.
double khintchine_ratio(const spin::SpinElement& g, double p);

// ||f - tau(f)||_p / max(||Gamma(f,f)^{1/2}||_p, ||Gamma(f*,f*)^{1/2}||_p),
// p >= 2.
double poincare_ratio(const spin::SpinElement& f, double p);

struct CltRow {
  int m;
  std::uint64_t seed;
  double exact;
  double expected;
  double err_exact;
  double err_expected;
};

struct CltStudy {
  double limit = 0.0;  // moment(Q, i)
  std::vector<CltRow> rows;
  // Log-log least-squares slopes over the m grid; NaN when the quantity
  // degenerates to zero (exact identities).
  double exact_err_slope = 0.0;
  double expected_err_slope = 0.0;
  double variance_slope = 0.0;
  std::vector<double> variance_per_m;
};

// Convergence study of the CLT statistic: per (m, seed) one exact-mode
// sample over a fresh sign table and the (seed-independent) expectation-mode
// value, with errors against the limit moment. Exact mode falls back to
// Monte Carlo with mc_samples draws when m^d exceeds the budget
// (mc_samples == 0 propagates the budget error instead).
CltStudy clt_convergence_study(const StructureMatrix& Q, const Word& i,
                               const std::vector<int>& m_grid, int seeds,
                               std::uint64_t seed0,
                               long long budget = spin::kDefaultCltBudget,
                               long long mc_samples = 0);

}  // namespace mixedq::analysis
