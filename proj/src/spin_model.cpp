#include "mixedq/spin_model.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "mixedq/rng.hpp"

namespace mixedq::spin {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
               static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  write_u32(out, static_cast<std::uint32_t>(v & 0xffffffffULL));
  write_u32(out, static_cast<std::uint32_t>(v >> 32));
}

// Base tables up to this many generators are materialized as a dense int8
// matrix; larger tables stay lazy (hash-evaluated per lookup, same values).
constexpr int kDenseGeneratorLimit = 2048;

}  // namespace

EpsilonTable::EpsilonTable(StructureMatrix base_q, int rows, int m,
                           std::uint64_t seed, Scheme scheme)
    : base_q_(std::move(base_q)), rows_(rows), m_(m), seed_(seed), scheme_(scheme) {
  require(m_ >= 1, "epsilon table needs m >= 1");
  require(rows_ >= base_rows() && rows_ % base_rows() == 0,
          "logical rows must be a multiple of the base rows");
  const long long g = static_cast<long long>(base_rows()) * m_;
  if (g <= kDenseGeneratorLimit) {
    dense_.assign(static_cast<std::size_t>(g * g), -1);
    for (int a = 0; a < g; ++a)
      for (int b = a + 1; b < g; ++b) {
        std::int8_t s = static_cast<std::int8_t>(derived_sign(a, b));
        dense_[static_cast<std::size_t>(a) * g + b] = s;
        dense_[static_cast<std::size_t>(b) * g + a] = s;
      }
  }
}

EpsilonTable EpsilonTable::sample(const StructureMatrix& Q, int m, std::uint64_t seed) {
  return EpsilonTable(Q, Q.size(), m, seed, Scheme::independent);
}

EpsilonTable EpsilonTable::sample_tensor_repeated(const StructureMatrix& Q_base, int n,
                                                  int m, std::uint64_t seed) {
  require(n >= 1, "tensor repetition factor must be >= 1");
  return EpsilonTable(Q_base, Q_base.size() * n, m, seed, Scheme::tensor_repeated);
}

int EpsilonTable::derived_sign(int g1, int g2) const {
  int a = std::min(g1, g2), b = std::max(g1, g2);
  const int g = base_rows() * m_;
  double u = bits_to_unit(derive_seed(seed_, static_cast<std::uint64_t>(a) * g + b));
  double q = base_q_.q(a / m_ + 1, b / m_ + 1);
  return u < (1.0 - q) / 2.0 ? -1 : +1;
}

int EpsilonTable::sign(const Letter& x, const Letter& y) const {
  require(x.row >= 1 && x.row <= rows_ && y.row >= 1 && y.row <= rows_,
          "letter row out of range");
  require(x.col >= 1 && x.col <= m_ && y.col >= 1 && y.col <= m_,
          "letter column out of range");
  Letter xr{(x.row - 1) % base_rows() + 1, x.col};
  Letter yr{(y.row - 1) % base_rows() + 1, y.col};
  if (xr == yr) return -1;  // includes the true diagonal eps(x,x) = -1
  int g1 = base_ordinal(xr), g2 = base_ordinal(yr);
  if (!dense_.empty())
    return dense_[static_cast<std::size_t>(g1) * (base_rows() * m_) + g2];
  return derived_sign(g1, g2);
}

EpsilonTable EpsilonTable::doubled() const { return with_rows(2 * rows_); }

EpsilonTable EpsilonTable::with_rows(int rows) const {
  if (rows <= 0 || rows % base_rows() != 0)
    throw std::invalid_argument("row count must be a positive multiple of the base row count");
  EpsilonTable t(*this);
  t.rows_ = rows;
  return t;
}

bool EpsilonTable::same_signs(const EpsilonTable& other) const {
  return rows_ == other.rows_ && m_ == other.m_ && seed_ == other.seed_ &&
         scheme_ == other.scheme_ && base_rows() == other.base_rows() &&
         base_q_.entries() == other.base_q_.entries();
}

void EpsilonTable::dump(std::ostream& out) const {
  out.write("EPSv1", 5);
  write_u32(out, static_cast<std::uint32_t>(base_rows()));
  write_u32(out, static_cast<std::uint32_t>(rows_));
  write_u32(out, static_cast<std::uint32_t>(m_));
  write_u32(out, scheme_ == Scheme::independent ? 0u : 1u);
  write_u64(out, seed_);
  const int g = base_rows() * m_;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      char s = static_cast<char>(a == b ? -1 : derived_sign(a, b));
      out.write(&s, 1);
    }
}

namespace {

// Reduction into a caller-provided buffer; returns the sign, or 0 if the
// word does not reduce to the empty word when empty_only is set. Buffer must
// hold word.size() letters. Shared by trace() and the CLT hot loop to avoid
// per-word allocation.
int reduce_into(const Letter* word, int n, const EpsilonTable& eps, Letter* buf,
                int& out_len) {
  int sign = 1;
  int len = 0;
  for (int idx = 0; idx < n; ++idx) {
    Letter x = word[idx];
    int pos = len;
    while (pos > 0 && x < buf[pos - 1]) {
      sign *= eps.sign(buf[pos - 1], x);
      --pos;
    }
    if (pos > 0 && buf[pos - 1] == x) {
      // x^2 = 1: drop the matched letter, shift the tail left.
      for (int t = pos - 1; t < len - 1; ++t) buf[t] = buf[t + 1];
      --len;
    } else {
      for (int t = len; t > pos; --t) buf[t] = buf[t - 1];
      buf[pos] = x;
      ++len;
    }
  }
  out_len = len;
  return sign;
}

void validate_word(const SpinWord& word, const EpsilonTable& eps) {
  for (const Letter& x : word)
    require(x.row >= 1 && x.row <= eps.rows() && x.col >= 1 && x.col <= eps.m(),
            "letter out of range for this epsilon table");
}

}  // namespace

ReducedWord reduce(const SpinWord& word, const EpsilonTable& eps) {
  validate_word(word, eps);
  std::vector<Letter> buf(word.size());
  int len = 0;
  int sign = word.empty() ? 1
                          : reduce_into(word.data(), static_cast<int>(word.size()),
                                        eps, buf.data(), len);
  buf.resize(len);
  return {sign, std::move(buf)};
}

double trace(const SpinWord& word, const EpsilonTable& eps) {
  constexpr int kMax = 64;
  require(word.size() <= kMax, "trace: word too long");
  validate_word(word, eps);
  std::array<Letter, kMax> buf;
  int len = 0;
  int sign = word.empty() ? 1
                          : reduce_into(word.data(), static_cast<int>(word.size()),
                                        eps, buf.data(), len);
  return len == 0 ? static_cast<double>(sign) : 0.0;
}

double expected_trace(const SpinWord& word, const StructureMatrix& Q, int row_period) {
  const int p = row_period == 0 ? Q.size() : row_period;
  require(p >= 1 && p <= Q.size(), "row period must lie in 1..Q.size()");
  for (const Letter& x : word)
    require(x.row >= 1 && x.col >= 1, "letter indices must be positive");

  auto reduce_letter = [&](const Letter& x) {
    return Letter{(x.row - 1) % p + 1, x.col};
  };

  // Insertion sort as in reduce(), but swap signs are collected as formal
  // symbols keyed by the row-reduced letter pair; only the parity of each
  // symbol matters since eps^2 = 1.
  std::vector<Letter> buf;
  buf.reserve(word.size());
  std::vector<std::pair<std::pair<Letter, Letter>, int>> parity;
  auto flip = [&](const Letter& a, const Letter& b) {
    Letter ra = reduce_letter(a), rb = reduce_letter(b);
    std::pair<Letter, Letter> key = std::minmax(ra, rb);
    for (auto& [k, c] : parity)
      if (k == key) {
        c ^= 1;
        return;
      }
    parity.emplace_back(key, 1);
  };

  for (const Letter& x : word) {
    int pos = static_cast<int>(buf.size());
    while (pos > 0 && x < buf[pos - 1]) {
      flip(buf[pos - 1], x);
      --pos;
    }
    if (pos > 0 && buf[pos - 1] == x) {
      buf.erase(buf.begin() + (pos - 1));
    } else {
      buf.insert(buf.begin() + pos, x);
    }
  }
  if (!buf.empty()) return 0.0;

  double val = 1.0;
  for (auto& [key, c] : parity) {
    if (c == 0) continue;
    if (key.first == key.second)
      val *= -1.0;  // letters identified under the repetition: deterministic sign
    else
      val *= Q.q(key.first.row, key.second.row);
  }
  return val;
}

namespace {

long long checked_power(int m, int d, long long budget) {
  long long total = 1;
  for (int l = 0; l < d; ++l) {
    if (total > budget / m + 1) return budget + 1;
    total *= m;
    if (total > budget) return budget + 1;
  }
  return total;
}

void validate_clt_inputs(const EpsilonTable& eps, const Word& labels, int m) {
  require(m >= 1 && m <= eps.m(), "m out of range for this epsilon table");
  for (int v : labels)
    require(v >= 1 && v <= eps.rows(), "label out of range for this epsilon table");
}

}  // namespace

double clt_statistic_exact(const EpsilonTable& eps, const Word& labels, int m,
                           long long budget, int threads) {
  validate_clt_inputs(eps, labels, m);
  const int d = static_cast<int>(labels.size());
  if (d == 0) return 1.0;
  require(d <= 32, "clt_statistic_exact: word too long");
  if (checked_power(m, d, budget) > budget)
    throw BudgetError("exact CLT enumeration needs m^d = " + std::to_string(m) + "^" +
                      std::to_string(d) +
                      " words, over budget; use clt_statistic_monte_carlo");

  // One chunk per value of the first inner index; chunk sums are combined in
  // chunk order, so the result does not depend on thread scheduling.
  std::vector<double> chunk_sum(m, 0.0);
  auto run_chunk = [&](int c) {
    std::array<Letter, 32> word;
    std::array<Letter, 32> buf;
    std::array<int, 32> k{};
    for (int l = 0; l < d; ++l) word[l] = {labels[l], 1};
    word[0].col = c + 1;
    double sum = 0.0;
    const long long inner = checked_power(m, d - 1, budget);
    for (long long step = 0; step < inner; ++step) {
      int len = 0;
      int sign = reduce_into(word.data(), d, eps, buf.data(), len);
      if (len == 0) sum += sign;
      for (int l = d - 1; l >= 1; --l) {
        if (++k[l] < m) {
          word[l].col = k[l] + 1;
          break;
        }
        k[l] = 0;
        word[l].col = 1;
      }
    }
    chunk_sum[c] = sum;
  };

  int nthreads = threads > 0 ? threads
                             : std::min<unsigned>(std::thread::hardware_concurrency(), m);
  if (nthreads <= 1) {
    for (int c = 0; c < m; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < m; c = next.fetch_add(1)) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  double total = 0.0;
  for (double s : chunk_sum) total += s;
  return total * std::pow(static_cast<double>(m), -0.5 * d);
}

double clt_statistic_monte_carlo(const EpsilonTable& eps, const Word& labels, int m,
                                 long long samples, std::uint64_t seed) {
  validate_clt_inputs(eps, labels, m);
  require(samples >= 1, "need at least one sample");
  const int d = static_cast<int>(labels.size());
  if (d == 0) return 1.0;
  require(d <= 32, "clt_statistic_monte_carlo: word too long");
  std::array<Letter, 32> word;
  std::array<Letter, 32> buf;
  double sum = 0.0;
  for (long long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    for (int l = 0; l < d; ++l) word[l] = {labels[l], rng.uniform_int(1, m)};
    int len = 0;
    int sign = reduce_into(word.data(), d, eps, buf.data(), len);
    if (len == 0) sum += sign;
  }
  return (sum / static_cast<double>(samples)) * std::pow(static_cast<double>(m), 0.5 * d);
}

double clt_statistic_expected(const StructureMatrix& Q, const Word& labels, int m,
                              int row_period) {
  require(m >= 1, "need m >= 1");
  for (int v : labels)
    require(v >= 1 && v <= Q.size(), "label out of range 1..Q.size()");
  const int d = static_cast<int>(labels.size());
  if (d == 0) return 1.0;
  if (d > 10)
    throw BudgetError("expectation-mode CLT sums over all set partitions of [d]; d > 10 unsupported");

  // expected_trace only depends on the coincidence pattern of the inner
  // indices, so group [m]^d by pattern: each set partition of [d] with b
  // blocks accounts for m(m-1)...(m-b+1) inner index vectors.
  SpinWord pattern(d);
  std::vector<int> rgs(d, 0);
  double total = 0.0;
  auto rec = [&](auto&& self, int pos, int maxb) -> void {
    if (pos == d) {
      int b = maxb + 1;
      if (b > m) return;
      double ff = 1.0;
      for (int j = 0; j < b; ++j) ff *= static_cast<double>(m - j);
      for (int l = 0; l < d; ++l) pattern[l] = {labels[l], rgs[l] + 1};
      total += ff * expected_trace(pattern, Q, row_period);
      return;
    }
    for (int v = 0; v <= maxb + 1; ++v) {
      rgs[pos] = v;
      self(self, pos + 1, std::max(maxb, v));
    }
  };
  rec(rec, 1, 0);  // rgs[0] = 0 fixed
  return total * std::pow(static_cast<double>(m), -0.5 * d);
}

std::vector<Eigen::MatrixXd> matrix_representation(const EpsilonTable& eps, int G,
                                                   int cap) {
  require(G >= 1 && G <= eps.rows() * eps.m(), "generator count out of range");
  if (G > cap)
    throw std::length_error("matrix representation needs 2^G with G = " +
                            std::to_string(G) + " over cap " + std::to_string(cap));
  auto letter_of = [&](int l) { return Letter{l / eps.m() + 1, l % eps.m() + 1}; };
  const int S = 1 << G;
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(G);
  for (int j = 0; j < G; ++j) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(S, S);
    for (int b = 0; b < S; ++b) {
      double phase = 1.0;
      for (int l = 0; l < j; ++l)
        if (b & (1 << l)) phase *= eps.sign(letter_of(l), letter_of(j));
      M(b ^ (1 << j), b) = phase;
    }
    gens.push_back(std::move(M));
  }
  return gens;
}

Eigen::MatrixXd represent(const SpinElement& f, int G, int cap) {
  const EpsilonTable& eps = *f.table();
  if (G == 0) G = eps.rows() * eps.m();
  require(G >= 1 && G <= eps.rows() * eps.m(), "generator count out of range");
  if (G > cap)
    throw std::length_error("matrix representation needs 2^G with G = " +
                            std::to_string(G) + " over cap " + std::to_string(cap));
  auto letter_of = [&](int l) { return Letter{l / eps.m() + 1, l % eps.m() + 1}; };

  // Cache pairwise signs over the G generators once.
  std::vector<std::int8_t> sg(static_cast<std::size_t>(G) * G, 1);
  for (int a = 0; a < G; ++a)
    for (int b = 0; b < G; ++b)
      sg[static_cast<std::size_t>(a) * G + b] =
          static_cast<std::int8_t>(eps.sign(letter_of(a), letter_of(b)));

  const int S = 1 << G;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(S, S);
  for (const auto& [word, c] : f.terms()) {
    std::vector<int> ords(word.size());
    for (std::size_t t = 0; t < word.size(); ++t) {
      ords[t] = letter_ordinal(word[t], eps.m());
      require(ords[t] < G, "element uses a generator beyond the first G");
    }
    for (int b = 0; b < S; ++b) {
      int state = b;
      double phase = 1.0;
      // Apply letters right to left: x_j flips bit j after picking up
      // eps(l,j) for every set bit l < j.
      for (int t = static_cast<int>(ords.size()) - 1; t >= 0; --t) {
        int j = ords[t];
        for (int l = 0; l < j; ++l)
          if (state & (1 << l)) phase *= sg[static_cast<std::size_t>(l) * G + j];
        state ^= 1 << j;
      }
      M(state, b) += c * phase;
    }
  }
  return M;
}

SpinElement::SpinElement(std::shared_ptr<const EpsilonTable> eps)
    : eps_(std::move(eps)) {
  if (!eps_) throw std::invalid_argument("spin element needs a sign table");
}

SpinElement SpinElement::scalar(std::shared_ptr<const EpsilonTable> eps, double c) {
  SpinElement f(std::move(eps));
  f.add_term({}, c);
  return f;
}

SpinElement SpinElement::from_word(std::shared_ptr<const EpsilonTable> eps,
                                   const SpinWord& word, double c) {
  SpinElement f(std::move(eps));
  auto r = reduce(word, *f.eps_);
  f.add_term(r.letters, c * r.sign);
  return f;
}

void SpinElement::add_term(const Key& key, double c) {
  if (c == 0.0) return;
  double& slot = terms_[key];
  slot += c;
  if (slot == 0.0) terms_.erase(key);
}

namespace {

void require_compatible(const SpinElement& a, const SpinElement& b) {
  if (!a.table()->same_signs(*b.table()))
    throw std::invalid_argument("spin elements live over different sign tables");
}

}  // namespace

SpinElement SpinElement::operator+(const SpinElement& other) const {
  require_compatible(*this, other);
  SpinElement out(eps_);
  out.terms_ = terms_;
  for (const auto& [k, c] : other.terms_) out.add_term(k, c);
  return out;
}

SpinElement SpinElement::operator-(const SpinElement& other) const {
  require_compatible(*this, other);
  SpinElement out(eps_);
  out.terms_ = terms_;
  for (const auto& [k, c] : other.terms_) out.add_term(k, -c);
  return out;
}

SpinElement SpinElement::scaled(double c) const {
  SpinElement out(eps_);
  if (c != 0.0)
    for (const auto& [k, v] : terms_) out.terms_[k] = v * c;
  return out;
}

SpinElement SpinElement::operator*(const SpinElement& other) const {
  require_compatible(*this, other);
  SpinElement out(eps_);
  SpinWord concat;
  for (const auto& [kb, cb] : terms_) {
    for (const auto& [kc, cc] : other.terms_) {
      concat.clear();
      concat.insert(concat.end(), kb.begin(), kb.end());
      concat.insert(concat.end(), kc.begin(), kc.end());
      auto r = reduce(concat, *eps_);
      out.add_term(r.letters, cb * cc * r.sign);
    }
  }
  return out;
}

SpinElement SpinElement::adjoint() const {
  SpinElement out(eps_);
  for (const auto& [k, c] : terms_) {
    SpinWord rev(k.rbegin(), k.rend());
    auto r = reduce(rev, *eps_);
    out.add_term(r.letters, c * r.sign);
  }
  return out;
}

double SpinElement::trace() const {
  auto it = terms_.find(Key{});
  return it == terms_.end() ? 0.0 : it->second;
}

double SpinElement::norm2() const {
  // Reduced words are orthonormal: tau(x_B* x_C) = delta_{B,C}.
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c * c;
  return std::sqrt(s);
}

bool SpinElement::same_terms(const SpinElement& other, double tol) const {
  for (const auto& [k, c] : terms_) {
    auto it = other.terms_.find(k);
    double oc = it == other.terms_.end() ? 0.0 : it->second;
    if (std::abs(c - oc) > tol) return false;
  }
  for (const auto& [k, c] : other.terms_)
    if (terms_.find(k) == terms_.end() && std::abs(c) > tol) return false;
  return true;
}

SpinElement SpinElement::apply_number() const {
  SpinElement out(eps_);
  for (const auto& [k, c] : terms_)
    out.add_term(k, c * static_cast<double>(k.size()));
  return out;
}

SpinElement SpinElement::apply_sqrt_number() const {
  SpinElement out(eps_);
  for (const auto& [k, c] : terms_)
    out.add_term(k, c * std::sqrt(static_cast<double>(k.size())));
  return out;
}

SpinElement SpinElement::apply_ou(double t) const {
  if (t < 0.0) throw std::invalid_argument("semigroup time must be >= 0");
  SpinElement out(eps_);
  for (const auto& [k, c] : terms_)
    out.add_term(k, c * std::exp(-t * static_cast<double>(k.size())));
  return out;
}

SpinElement SpinElement::derivation() const {
  auto target = std::make_shared<EpsilonTable>(eps_->doubled());
  const int R = eps_->rows();
  SpinElement out(target);
  for (const auto& [k, c] : terms_) {
    for (std::size_t a = 0; a < k.size(); ++a) {
      SpinWord w(k);
      w[a].row += R;
      auto r = reduce(w, *target);
      out.add_term(r.letters, c * r.sign);
    }
  }
  return out;
}

SpinElement conditional_expectation(const SpinElement& f,
                                    std::shared_ptr<const EpsilonTable> target) {
  const EpsilonTable& src = *f.table();
  const EpsilonTable& dst = *target;
  if (dst.rows() > src.rows() || dst.m() != src.m() || dst.seed() != src.seed() ||
      dst.scheme() != src.scheme() || dst.base_rows() != src.base_rows() ||
      dst.base_q().entries() != src.base_q().entries())
    throw std::invalid_argument(
        "conditional expectation target must be a sub-table of the source");
  SpinElement out(target);
  for (const auto& [k, c] : f.terms()) {
    bool keep = true;
    for (const auto& x : k)
      if (x.row > dst.rows()) {
        keep = false;
        break;
      }
    if (keep) out.add_term(k, c);
  }
  return out;
}

SpinElement gradient_form(const SpinElement& f, const SpinElement& g) {
  require_compatible(f, g);
  SpinElement fa = f.adjoint();
  SpinElement t1 = fa.apply_number() * g;
  SpinElement t2 = fa * g.apply_number();
  SpinElement t3 = (fa * g).apply_number();
  return (t1 + t2 - t3).scaled(0.5);
}

}  // namespace mixedq::spin
