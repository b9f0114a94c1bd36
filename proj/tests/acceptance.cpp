// Acceptance gate. Each criterion prints one PASS/FAIL line plus detail
// lines; the exit status is 0 only if every requested criterion passed.
// Run a single criterion with --criterion N; criterion 10 additionally
// needs --mixedq PATH pointing at the command-line binary.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mixedq/analysis.hpp"
#include "mixedq/combinatorics.hpp"
#include "mixedq/fock.hpp"
#include "mixedq/moments.hpp"
#include "mixedq/rng.hpp"
#include "mixedq/spin_model.hpp"
#include "mixedq/structure_matrix.hpp"

using namespace mixedq;
using combinatorics::PairPartition;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    details.emplace_back(buf);
  }
};

StructureMatrix random_structure(int N, double range, Rng& rng) {
  Eigen::MatrixXd E(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) E(a, b) = E(b, a) = rng.uniform(-range, range);
  return StructureMatrix(E);
}

// All words of length 1..dmax over {1..N}.
std::vector<Word> words_up_to(int N, int dmax) {
  std::vector<Word> out;
  for (int d = 1; d <= dmax; ++d) {
    Word w(d, 1);
    while (true) {
      out.push_back(w);
      int k = d - 1;
      while (k >= 0 && w[k] == N) w[k--] = 1;
      if (k < 0) break;
      ++w[k];
    }
  }
  return out;
}

std::string dotted(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "." : "") + std::to_string(w[k]);
  return s;
}

std::vector<double> tied_ranks(const std::vector<double>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  int a = 0;
  while (a < n) {
    int b = a;
    while (b + 1 < n && v[idx[b + 1]] == v[idx[a]]) ++b;
    const double avg = 0.5 * (a + b) + 1.0;
    for (int t = a; t <= b; ++t) r[idx[t]] = avg;
    a = b + 1;
  }
  return r;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int k = 0; k < n; ++k) mx += x[k], my += y[k];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (int k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(tied_ranks(x), tied_ranks(y));
}

// ---------------------------------------------------------------------------
// 1. Limit moments against the finite-size expectation statistic.

// Direct definition of the finite-size expectation: average the symbolic
// sign-expectation over every column tuple, without the partition grouping
// the library uses.
double direct_expected(const StructureMatrix& Q, const Word& w, int m) {
  const int d = static_cast<int>(w.size());
  std::vector<int> c(d, 1);
  double sum = 0.0;
  while (true) {
    spin::SpinWord pat(d);
    for (int k = 0; k < d; ++k) pat[k] = spin::Letter{w[k], c[k]};
    sum += spin::expected_trace(pat, Q);
    int k = d - 1;
    while (k >= 0 && c[k] == m) c[k--] = 1;
    if (k < 0) break;
    ++c[k];
  }
  return sum * std::pow(static_cast<double>(m), -0.5 * d);
}

Outcome criterion1() {
  Outcome out;
  Rng qrng(0xC1A0);
  const int ms[3] = {8, 16, 32};
  // Lagrange weights sending the three nodes 1/8, 1/16, 1/32 to 1/m = 0.
  // The expectation statistic is an exact polynomial of degree <= d/2 - 1
  // in 1/m, so for d <= 6 three nodes recover the limit exactly.
  const double lw[3] = {1.0 / 3.0, -2.0, 8.0 / 3.0};

  long long combos = 0, literal_violations = 0;
  double max_extrap_err = 0, max_pref_err = 0, max_scaled_err = 0;
  std::string worst_word;
  int worst_m = 0, worst_iq = 0;

  for (int iq = 0; iq < 50; ++iq) {
    const int N = 1 + iq % 3;
    const StructureMatrix Q = random_structure(N, 0.95, qrng);
    for (const Word& w : words_up_to(N, 6)) {
      ++combos;
      const double mom = moment(Q, w);
      double fm[3];
      for (int k = 0; k < 3; ++k) {
        fm[k] = spin::clt_statistic_expected(Q, w, ms[k]);
        const double err = std::abs(fm[k] - mom);
        if (err > 5.0 / ms[k]) ++literal_violations;
        if (err * ms[k] > max_scaled_err) {
          max_scaled_err = err * ms[k];
          worst_word = dotted(w);
          worst_m = ms[k];
          worst_iq = iq;
        }
      }
      const double extrap = lw[0] * fm[0] + lw[1] * fm[1] + lw[2] * fm[2];
      max_extrap_err = std::max(max_extrap_err, std::abs(extrap - mom));

      if (w.size() % 2 == 0) {
        // Full pairings: the symbolic expectation of the pattern word must
        // equal the crossing product, leaving the falling-factorial
        // prefactor as the only m-dependence of those terms.
        const int d = static_cast<int>(w.size());
        double sum_prod = 0.0;
        for (const PairPartition& sigma : combinatorics::enumerate_pair_partitions(d)) {
          const auto& pairs = sigma.pairs();
          bool compatible = true;
          for (const auto& [e, z] : pairs)
            if (w[e - 1] != w[z - 1]) {
              compatible = false;
              break;
            }
          if (!compatible) continue;
          double prod = 1.0;
          for (const auto& [k, l] : combinatorics::crossings(sigma))
            prod *= Q.q(w[pairs[k].first - 1], w[pairs[l].first - 1]);
          sum_prod += prod;
          spin::SpinWord pat(d);
          for (std::size_t b = 0; b < pairs.size(); ++b) {
            pat[pairs[b].first - 1] = spin::Letter{w[pairs[b].first - 1],
                                                   static_cast<int>(b) + 1};
            pat[pairs[b].second - 1] = spin::Letter{w[pairs[b].second - 1],
                                                    static_cast<int>(b) + 1};
          }
          max_pref_err = std::max(max_pref_err,
                                  std::abs(spin::expected_trace(pat, Q) - prod));
        }
        max_pref_err = std::max(max_pref_err, std::abs(sum_prod - mom));
      }
    }
  }

  // Grouping identity at small sizes: the partition/falling-factorial form
  // must agree with the raw average over all column tuples.
  double max_group_err = 0.0;
  {
    Rng r2(0xC1A1);
    const StructureMatrix Q2 = random_structure(2, 0.9, r2);
    const struct {
      Word w;
      int m;
    } cases[] = {{{1, 1, 1, 1}, 3}, {{1, 2, 1, 2}, 3}, {{1, 2, 2, 1}, 3},
                 {{1, 1, 2, 2, 1, 1}, 2}};
    for (const auto& c : cases)
      max_group_err = std::max(max_group_err,
                               std::abs(direct_expected(Q2, c.w, c.m) -
                                        spin::clt_statistic_expected(Q2, c.w, c.m)));
  }

  const bool pass_literal = literal_violations == 0;
  const bool pass_extrap = max_extrap_err <= 1e-9;
  const bool pass_pref = max_pref_err <= 1e-12;
  const bool pass_group = max_group_err <= 1e-12;

  out.note("%lld word/matrix combinations, m in {8,16,32}", combos);
  out.note("[%s] finite-size bound 5/m: %lld violations, max m*|err| = %.3f "
           "(worst word %s at m=%d, matrix %d)",
           pass_literal ? "PASS" : "FAIL", literal_violations, max_scaled_err,
           worst_word.c_str(), worst_m, worst_iq);
  out.note("[%s] three-point extrapolation to the limit: max |err| = %.3e (tol 1e-9)",
           pass_extrap ? "PASS" : "FAIL", max_extrap_err);
  out.note("[%s] full-pairing prefactor identity: max |err| = %.3e (tol 1e-12)",
           pass_pref ? "PASS" : "FAIL", max_pref_err);
  out.note("[%s] partition grouping vs direct tuple sum: max |err| = %.3e (tol 1e-12)",
           pass_group ? "PASS" : "FAIL", max_group_err);
  out.pass = pass_literal && pass_extrap && pass_pref && pass_group;
  return out;
}

// ---------------------------------------------------------------------------
// 2. Commutation relations on the truncated Fock space.

Outcome criterion2() {
  Outcome out;
  Rng qrng(0xACC2);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int N = 1 + k % 3;
    const StructureMatrix Q = random_structure(N, 1.0, qrng);
    const fock::FockBasis basis(N, 4);
    const auto rep = fock::verify_commutation(Q, basis, 1e-12);
    worst = std::max(worst, rep.max_residual);
    if (!rep.pass) {
      out.pass = false;
      out.note("matrix %d (N=%d): residual %.3e at j=%d k=%d degree %d", k, N,
               rep.max_residual, rep.worst_j, rep.worst_k, rep.worst_degree);
    }
  }
  out.note("100 random structure matrices, N <= 3, D = 4");
  out.note("worst commutation residual %.3e (tol 1e-12)", worst);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Wick decomposition against operator products on the vacuum.

Outcome criterion3() {
  Outcome out;
  Rng qrng(0xACC3);
  double worst = 0.0;
  long long words = 0;
  for (int k = 0; k < 20; ++k) {
    const int N = 1 + k % 3;
    const StructureMatrix Q = random_structure(N, 0.95, qrng);
    const fock::FockBasis basis(N, 5);
    for (const Word& w : words_up_to(N, 5)) {
      ++words;
      double diff = 0.0;
      const bool ok = fock::wick_vector_check(Q, basis, w, 1e-12, &diff);
      worst = std::max(worst, diff);
      if (!ok) {
        out.pass = false;
        out.note("matrix %d: word %s deviates by %.3e", k, dotted(w).c_str(), diff);
      }
    }
  }
  out.note("%lld words of length <= 5 across 20 random structure matrices", words);
  out.note("worst vector deviation %.3e (tol 1e-12)", worst);
  return out;
}

// ---------------------------------------------------------------------------
// 4. Gram matrices: permutation oracle at constant coupling, positivity
//    for random couplings.

double perm_inversion_inner(const Word& i, const Word& j, double q) {
  const int s = static_cast<int>(i.size());
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    bool match = true;
    for (int k = 0; k < s && match; ++k) match = i[k] == j[perm[k]];
    if (!match) continue;
    int inv = 0;
    for (int k = 0; k < s; ++k)
      for (int l = k + 1; l < s; ++l)
        if (perm[k] > perm[l]) ++inv;
    total += std::pow(q, inv);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Outcome criterion4() {
  Outcome out;
  double max_entry_err = 0.0, max_qfact_err = 0.0;
  for (double q : {-0.95, -0.6, -0.3, 0.0, 0.3, 0.6, 0.95}) {
    const StructureMatrix Q = StructureMatrix::constant(2, q);
    const fock::FockBasis basis(2, 4);
    const auto g = fock::gram(Q, basis);
    for (int s = 1; s <= 4; ++s) {
      const int n = basis.degree_size(s);
      const int off = basis.degree_offset(s);
      for (int ki = 0; ki < n; ++ki) {
        for (int kj = 0; kj < n; ++kj) {
          const double oracle =
              perm_inversion_inner(basis.word_at(off + ki), basis.word_at(off + kj), q);
          max_entry_err =
              std::max(max_entry_err, std::abs(g.blocks[s](ki, kj) - oracle));
        }
      }
      // Repeated-letter diagonal: the oracle sums q^inv over all of S_s,
      // which telescopes to the q-factorial.
      double qfact = 1.0;
      for (int t = 1; t <= s; ++t) {
        double bracket = 0.0, pw = 1.0;
        for (int u = 0; u < t; ++u) bracket += pw, pw *= q;
        qfact *= bracket;
      }
      const int i0 = basis.index_in_degree(Word(s, 1));
      max_qfact_err =
          std::max(max_qfact_err, std::abs(g.blocks[s](i0, i0) - qfact));
    }
  }
  const bool pass_oracle = max_entry_err <= 1e-12 && max_qfact_err <= 1e-12;
  out.note("[%s] constant-q blocks vs permutation-inversion oracle, s <= 4: "
           "max |err| = %.3e, q-factorial diagonal err = %.3e (tol 1e-12)",
           pass_oracle ? "PASS" : "FAIL", max_entry_err, max_qfact_err);

  Rng qrng(0xACC4);
  double min_eig = std::numeric_limits<double>::infinity();
  bool pass_psd = true;
  for (int k = 0; k < 200; ++k) {
    const int N = 1 + k % 3;
    const StructureMatrix Q = random_structure(N, 0.95, qrng);
    const auto g = fock::gram(Q, fock::FockBasis(N, 4));
    min_eig = std::min(min_eig, g.min_eigenvalue);
    if (g.min_eigenvalue < -1e-10) {
      pass_psd = false;
      out.note("matrix %d (N=%d): min eigenvalue %.3e", k, N, g.min_eigenvalue);
    }
  }
  out.note("[%s] 200 random structure matrices, D = 4: min Gram eigenvalue %.3e "
           "(floor -1e-10)",
           pass_psd ? "PASS" : "FAIL", min_eig);
  out.pass = pass_oracle && pass_psd;
  return out;
}

// ---------------------------------------------------------------------------
// 5. Hypercontractivity of the semigroup on an 8-generator spin table.

Outcome criterion5() {
  Outcome out;
  Rng qrng(0xACC5);
  const StructureMatrix Q = random_structure(2, 0.9, qrng);
  auto eps = std::make_shared<spin::EpsilonTable>(
      spin::EpsilonTable::sample(Q, 4, 0x51C5));
  const int G = 8;
  const double grid[4] = {1.5, 2.0, 3.0, 4.0};

  double worst_gap = -std::numeric_limits<double>::infinity();
  int pair_index = 0;
  for (double p : grid) {
    for (double r : grid) {
      ++pair_index;
      const double theta = (p - 1.0) / (r - 1.0);
      // At or inside the sharp boundary: exactly on it when theta < 1,
      // strictly inside (t = 0.25) when the pair is contractive anyway.
      const double t = theta >= 1.0 ? 0.25 : -0.5 * std::log(theta);
      const auto rep = analysis::hypercontractivity_check(
          eps, G, p, r, t, 500, derive_seed(0xACC5, pair_index), 1e-10);
      worst_gap = std::max(worst_gap, rep.worst);
      if (!rep.pass) {
        out.pass = false;
        out.note("violated at p=%.1f r=%.1f t=%.4f: gap %.3e (%s)", p, r, t,
                 rep.worst, rep.witness.c_str());
      }
    }
  }
  out.note("contractive grid: 16 pairs x 500 random elements, worst norm gap "
           "%.3e (slack 1e-10)",
           worst_gap);

  int found = 0, eligible = 0;
  double min_excess = std::numeric_limits<double>::infinity();
  for (double p : grid) {
    for (double r : grid) {
      if (r <= p) continue;
      const double theta = (p - 1.0) / (r - 1.0);
      if (1.05 * theta > 1.0) continue;
      ++eligible;
      const double tw = -0.5 * std::log(1.05 * theta);
      const auto wit = analysis::hypercontractivity_witness(eps, G, p, r, tw, 0.05);
      if (wit.pass) {
        ++found;
        min_excess = std::min(min_excess, wit.worst);
      } else {
        out.pass = false;
        out.note("no witness at p=%.1f r=%.1f t=%.4f", p, r, tw);
      }
    }
  }
  out.note("sharpness witnesses 5%% beyond the boundary: %d/%d found, smallest "
           "excess %.3e",
           found, eligible, min_excess);
  return out;
}

// ---------------------------------------------------------------------------
// 6. Gradient form against the derivation, and the flat p = 2 transform.

Outcome criterion6() {
  Outcome out;
  Rng qrng(0xACC6);
  const StructureMatrix Q = random_structure(2, 0.9, qrng);
  auto eps = std::make_shared<spin::EpsilonTable>(
      spin::EpsilonTable::sample(Q, 2, 0x51C6));

  // Random elements with up to 10 of the 16 reduced words over the 4
  // base letters.
  Rng rng(derive_seed(0xACC6, 1));
  auto draw = [&]() {
    spin::SpinElement f(eps);
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 9));
    std::set<int> masks;
    while (static_cast<int>(masks.size()) < n)
      masks.insert(static_cast<int>(rng.uniform_int(0, 15)));
    for (int mask : masks) {
      spin::SpinWord key;
      for (int l = 0; l < 4; ++l)
        if (mask & (1 << l)) key.push_back(spin::Letter{l / 2 + 1, l % 2 + 1});
      f.add_term(key, rng.uniform(-1.0, 1.0));
    }
    return f;
  };

  int mismatches = 0;
  for (int k = 0; k < 200; ++k) {
    const auto f = draw(), g = draw();
    const auto lhs = spin::gradient_form(f, g);
    const auto rhs = spin::conditional_expectation(
        f.derivation().adjoint() * g.derivation(), f.table());
    if (!lhs.same_terms(rhs, 1e-12)) {
      ++mismatches;
      out.pass = false;
    }
  }
  out.note("[%s] gradient form vs expected derivation product, termwise: "
           "%d/200 mismatches (tol 1e-12)",
           mismatches == 0 ? "PASS" : "FAIL", mismatches);

  double max_dev = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng draw_rng(derive_seed(0xACC6, 0x200 + k));
    const auto f = analysis::random_element(eps, 4, 4, draw_rng, false);
    const auto ratio = analysis::riesz_ratio(f, 2.0);
    max_dev = std::max({max_dev, std::abs(ratio.low_side - 1.0),
                        std::abs(ratio.high_side - 1.0)});
  }
  const bool pass_riesz = max_dev <= 1e-10;
  if (!pass_riesz) out.pass = false;
  out.note("[%s] p = 2 transform ratios on 100 mean-zero elements: max "
           "|ratio - 1| = %.3e (tol 1e-10)",
           pass_riesz ? "PASS" : "FAIL", max_dev);
  return out;
}

// ---------------------------------------------------------------------------
// 7. Log-Sobolev inequality with near-tightness at small perturbations.

Outcome criterion7() {
  Outcome out;
  Rng qrng(0xACC7);
  const StructureMatrix Q = random_structure(3, 0.9, qrng);
  auto eps = std::make_shared<spin::EpsilonTable>(
      spin::EpsilonTable::sample(Q, 2, 0x51C7));
  const int G = 6;

  const auto rep = analysis::log_sobolev_check(eps, G, 500, derive_seed(0xACC7, 1), 1e-8);
  if (!rep.pass) {
    out.pass = false;
    out.note("violation: %s", rep.witness.c_str());
  }
  out.note("[%s] 500 random elements: worst entropy excess %.3e (slack 1e-8)",
           rep.pass ? "PASS" : "FAIL", rep.worst);

  const auto f = spin::SpinElement::scalar(eps, 1.0) +
                 spin::SpinElement::from_word(eps, {spin::Letter{1, 1}}, 0.01);
  const auto [lhs, rhs] = analysis::log_sobolev_sides(f, G);
  const double ratio = lhs / rhs;
  const bool tight = lhs <= rhs + 1e-8 && std::abs(ratio - 1.0) <= 0.05;
  if (!tight) out.pass = false;
  out.note("[%s] tightness at f = 1 + 0.01 x_1: entropy/energy ratio %.8f "
           "(must sit within 5%% of 1)",
           tight ? "PASS" : "FAIL", ratio);
  return out;
}

// ---------------------------------------------------------------------------
// 8. Growth of the Poincare constant in p.

Outcome criterion8() {
  Outcome out;
  Rng qrng(0xACC8);
  const StructureMatrix Q = random_structure(3, 0.9, qrng);
  auto eps = std::make_shared<spin::EpsilonTable>(
      spin::EpsilonTable::sample(Q, 2, 0x51C8));
  const int G = 6;
  const double pgrid[4] = {2, 4, 8, 16};

  double max_scaled = 0.0, worst_p2 = 0.0;
  bool finite = true, p2_ok = true;
  for (int k = 0; k < 500; ++k) {
    Rng draw_rng(derive_seed(0xACC8, k));
    const auto f = analysis::random_element(eps, G, 4, draw_rng);
    for (double p : pgrid) {
      const double ratio = analysis::poincare_ratio(f, p);
      if (!std::isfinite(ratio)) finite = false;
      max_scaled = std::max(max_scaled, ratio / std::sqrt(p));
      if (p == 2.0) {
        worst_p2 = std::max(worst_p2, ratio);
        if (ratio > 1.0 + 1e-10) p2_ok = false;
      }
    }
  }
  out.note("[%s] 500 elements x p in {2,4,8,16}: all ratios finite", finite ? "PASS" : "FAIL");
  out.note("max ratio / sqrt(p) = %.6f", max_scaled);
  out.note("[%s] spectral-gap case p = 2: worst ratio %.12f (bound 1 + 1e-10)",
           p2_ok ? "PASS" : "FAIL", worst_p2);
  out.pass = finite && p2_ok;
  return out;
}

// ---------------------------------------------------------------------------
// 9. Sampling variance of the exact finite-size statistic shrinks with m.

Outcome criterion9() {
  Outcome out;
  const struct {
    StructureMatrix Q;
    Word w;
    const char* tag;
  } cases[] = {
      {StructureMatrix::constant(1, 0.5), {1, 1, 1, 1}, "single generator"},
      {StructureMatrix::constant(2, -0.4), {1, 2, 1, 2}, "mixed pair"},
  };
  const std::vector<int> m_grid{4, 8, 16, 32};
  for (const auto& c : cases) {
    const auto study = analysis::clt_convergence_study(c.Q, c.w, m_grid, 50, 0xACC9);
    std::vector<double> ms(m_grid.begin(), m_grid.end());
    const double rho = spearman(ms, study.variance_per_m);
    const bool ok = rho < -0.8;
    if (!ok) out.pass = false;
    std::string vs;
    for (std::size_t k = 0; k < study.variance_per_m.size(); ++k) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%s%.3e", k ? " " : "", study.variance_per_m[k]);
      vs += buf;
    }
    out.note("[%s] %s, 50 seeds: variances over m {4,8,16,32} = %s, Spearman "
             "rho = %.3f (need < -0.8)",
             ok ? "PASS" : "FAIL", c.tag, vs.c_str(), rho);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical reruns of every command.

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& bin, const std::string& args) {
  const std::string cmd = "\"" + bin + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return (rc >> 8) & 0xff;
}

Outcome criterion10(const std::string& mixedq) {
  Outcome out;
  if (mixedq.empty()) {
    out.pass = false;
    out.note("needs --mixedq PATH to the command-line binary");
    return out;
  }
  const struct {
    const char* tag;
    const char* args;
  } cmds[] = {
      {"moments", "moments --q-const 0.5 --N 2 --word 1,2,1,2 --word 1,1,2,2"},
      {"moments-json",
       "moments --q-const 0.5 --N 2 --word 1,2,1,2 --format json"},
      {"fock-verify", "fock-verify --q-const 0.3 --N 2 --D 3 --trials 5 --seed 7"},
      {"clt",
       "clt --q-const 0.5 --N 1 --word 1,1,1,1 --m-grid 4,8 --seeds 3 --seed 5"},
      {"hyper",
       "hyper --q-const 0.4 --N 2 --m 2 --samples 5 --p-grid 2 --r-grid 2,4 --seed 3"},
      {"logsob", "logsob --q-const 0.4 --N 2 --m 2 --samples 10 --seed 3"},
      {"riesz", "riesz --q-const 0.4 --N 2 --m 2 --samples 5 --seed 3"},
      {"poincare",
       "poincare --q-const 0.4 --N 2 --m 2 --samples 5 --p-grid 2,4 --seed 3"},
  };
  int identical = 0;
  for (const auto& c : cmds) {
    const std::string f1 = std::string("acc10_") + c.tag + "_1.out";
    const std::string f2 = std::string("acc10_") + c.tag + "_2.out";
    const int e1 = run_tool(mixedq, std::string(c.args) + " --out " + f1);
    const int e2 = run_tool(mixedq, std::string(c.args) + " --out " + f2);
    const std::string b1 = slurp(f1), b2 = slurp(f2);
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    if (e1 == 0 && e2 == 0 && !b1.empty() && b1 == b2) {
      ++identical;
    } else {
      out.pass = false;
      out.note("%s: exit codes %d/%d, outputs %s", c.tag, e1, e2,
               b1 == b2 ? "identical" : "differ");
    }
  }
  out.note("%d/%d command reruns byte-identical with exit code 0", identical,
           static_cast<int>(std::size(cmds)));
  return out;
}

// ---------------------------------------------------------------------------

const char* kNames[11] = {"",
                          "clt moment convergence",
                          "fock commutation",
                          "wick vectors",
                          "gram positivity",
                          "hypercontractivity",
                          "gradient form and riesz",
                          "log-sobolev",
                          "poincare growth",
                          "variance decay",
                          "output determinism"};

// Runtime budgets in seconds; zero means unbounded.
const double kCaps[11] = {0, 120, 60, 60, 0, 300, 0, 0, 0, 0, 0};

Outcome run_criterion(int n, const std::string& mixedq) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10(mixedq);
  }
  Outcome out;
  out.pass = false;
  out.note("unknown criterion");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  std::string mixedq;
  for (int a = 1; a < argc; ++a) {
    const std::string s = argv[a];
    if (s == "--criterion" && a + 1 < argc) {
      criterion = std::atoi(argv[++a]);
    } else if (s == "--mixedq" && a + 1 < argc) {
      mixedq = argv[++a];
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--mixedq PATH]\n");
      return 2;
    }
  }
  if (criterion < 0 || criterion > 10) {
    std::fprintf(stderr, "criterion must be 1..10\n");
    return 2;
  }
  std::vector<int> list;
  if (criterion > 0)
    list.push_back(criterion);
  else
    for (int n = 1; n <= 10; ++n) list.push_back(n);

  bool all_pass = true;
  for (int n : list) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out = run_criterion(n, mixedq);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (kCaps[n] > 0) {
      out.note("elapsed %.1f s (cap %.0f s)", secs, kCaps[n]);
      if (secs > kCaps[n]) {
        out.pass = false;
        out.note("runtime cap exceeded");
      }
    } else {
      out.note("elapsed %.1f s", secs);
    }
    std::printf("criterion %d (%s): %s\n", n, kNames[n], out.pass ? "PASS" : "FAIL");
    for (const auto& d : out.details) std::printf("  - %s\n", d.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
