#include "mixedq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mixedq/analysis.hpp"
#include "mixedq/fock.hpp"
#include "mixedq/moments.hpp"
#include "mixedq/rng.hpp"
#include "mixedq/spin_model.hpp"
#include "mixedq/structure_matrix.hpp"

namespace mixedq::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;

struct RunConfig {
  std::string command;
  // Q source: exactly one of file, inline JSON, or constant-q (with --N).
  std::string q_file;
  std::string q_inline;
  double q_const = std::numeric_limits<double>::quiet_NaN();
  int N = 0;

  std::uint64_t seed = 0;
  std::string out;  // empty = stdout
  std::string format = "csv";

  std::vector<std::string> words;
  std::vector<int> m_grid{4, 8, 16, 32};
  int seeds = 10;
  long long budget = spin::kDefaultCltBudget;
  long long mc_samples = 0;

  int D = 4;
  int trials = 20;
  bool negative_control = false;

  std::vector<double> p_grid;
  std::vector<double> r_grid;
  double t = 0.0;
  bool t_given = false;
  int samples = 100;
  double margin = 0.05;
  int G = 0;       // 0 = min(6, N*m)
  int m_cols = 2;  // spin-table columns
  bool no_witness = false;

  std::string dump_gram;
  std::string dump_eps;
};

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Output table: '#'-prefixed config echo and notes, then a header row and
// data rows. Cells are JSON values so the CSV and JSON writers share them.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  std::map<std::string, std::string> config;
  std::vector<std::string> notes;
};

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return fmt_g(v.get<double>());
}

void emit_csv(const Table& t, std::ostream& out) {
  for (const auto& [k, v] : t.config) out << "# " << k << "=" << v << "\n";
  for (const auto& n : t.notes) out << "# " << n << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << csv_cell(row[c]);
    out << "\n";
  }
}

void emit_json(const Table& t, std::ostream& out) {
  nlohmann::json j;
  j["config"] = t.config;
  j["notes"] = t.notes;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  out << j.dump(2) << "\n";
}

void emit(const Table& t, const RunConfig& cfg) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);  // binary: byte-identical reruns
    if (!file) throw std::invalid_argument("cannot open output file " + cfg.out);
    out = &file;
  }
  if (cfg.format == "json")
    emit_json(t, *out);
  else
    emit_csv(t, *out);
}

StructureMatrix load_structure_matrix(const RunConfig& cfg) {
  const int sources = (cfg.q_file.empty() ? 0 : 1) + (cfg.q_inline.empty() ? 0 : 1) +
                      (std::isnan(cfg.q_const) ? 0 : 1);
  if (sources == 0)
    throw std::invalid_argument(
        "no structure matrix given (use --q-file, --q-inline, or --q-const with --N)");
  if (sources > 1)
    throw std::invalid_argument("more than one structure matrix source given");
  if (!cfg.q_file.empty()) return StructureMatrix::load(cfg.q_file);
  if (!cfg.q_inline.empty()) return StructureMatrix::from_json_text(cfg.q_inline);
  if (cfg.N <= 0) throw std::invalid_argument("--q-const needs --N >= 1");
  return StructureMatrix::constant(cfg.N, cfg.q_const);
}

Word parse_word(const std::string& text) {
  Word w;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ','))
    if (!token.empty()) w.push_back(std::stoi(token));
  if (w.empty() && !text.empty())
    throw std::invalid_argument("cannot parse word '" + text + "'");
  return w;
}

std::string dotted(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k)
    s += (k ? "." : "") + std::to_string(w[k]);
  return s;
}

template <typename T>
std::string joined(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += " ";
    if constexpr (std::is_same_v<T, double>)
      s += fmt_g(xs[k]);
    else
      s += std::to_string(xs[k]);
  }
  return s;
}

void echo_common(Table& t, const RunConfig& cfg, const StructureMatrix& Q) {
  t.config["command"] = cfg.command;
  t.config["format"] = cfg.format;
  t.config["seed"] = std::to_string(cfg.seed);
  t.config["N"] = std::to_string(Q.size());
  if (!cfg.q_file.empty()) t.config["q_file"] = cfg.q_file;
  if (!cfg.q_inline.empty()) t.config["q_inline"] = cfg.q_inline;
  if (!std::isnan(cfg.q_const)) t.config["q_const"] = fmt_g(cfg.q_const);
}

// Spin table shared by the inequality commands; G = 0 resolves to
// min(6, N*m) so the default representation stays small.
struct SpinSetup {
  std::shared_ptr<const spin::EpsilonTable> eps;
  int G;
};

SpinSetup spin_setup(const RunConfig& cfg, const StructureMatrix& Q) {
  auto eps = std::make_shared<spin::EpsilonTable>(
      spin::EpsilonTable::sample(Q, cfg.m_cols, derive_seed(cfg.seed, 0x5157)));
  int G = cfg.G > 0 ? cfg.G : std::min(6, Q.size() * cfg.m_cols);
  return {eps, G};
}

void echo_spin(Table& t, const RunConfig& cfg, const SpinSetup& s) {
  t.config["G"] = std::to_string(s.G);
  t.config["m"] = std::to_string(cfg.m_cols);
  t.config["samples"] = std::to_string(cfg.samples);
}

int cmd_moments(const RunConfig& cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  if (cfg.words.empty())
    throw std::invalid_argument("moments needs at least one --word");
  Table t;
  echo_common(t, cfg, Q);
  t.columns = {"word", "moment"};
  for (const auto& text : cfg.words) {
    const Word w = parse_word(text);
    t.rows.push_back({dotted(w), moment(Q, w)});
  }
  emit(t, cfg);
  return kExitPass;
}

int cmd_fock_verify(const RunConfig& cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  Table t;
  echo_common(t, cfg, Q);
  t.config["D"] = std::to_string(cfg.D);
  t.config["trials"] = std::to_string(cfg.trials);
  t.config["negative_control"] = cfg.negative_control ? "1" : "0";
  t.columns = {"check", "residual", "detail", "pass"};
  bool all_pass = true;

  fock::FockBasis basis(Q.size(), cfg.D);

  // Gram positivity; an inconsistent crossing convention throws here.
  bool have_gram = false;
  fock::GramMatrix g;
  try {
    g = fock::gram(Q, basis);
    have_gram = true;
    int kernel = 0;
    for (int k : g.kernel_dims) kernel += k;
    t.rows.push_back({"gram-psd", g.min_eigenvalue,
                      "kernel_dim=" + std::to_string(kernel), true});
  } catch (const std::runtime_error& e) {
    t.rows.push_back({"gram-psd", nullptr, std::string(e.what()), false});
    all_pass = false;
  }

  std::vector<fock::FockOperator> corrupted;
  const std::vector<fock::FockOperator>* annihilators = nullptr;
  if (cfg.negative_control) {
    // Build annihilators from a visibly wrong coupling matrix; the
    // commutation check must then fail.
    Eigen::MatrixXd E = Q.entries();
    E(0, 0) += E(0, 0) > 0.5 ? -0.5 : 0.5;
    const StructureMatrix Qc(E);
    for (int j = 1; j <= Q.size(); ++j)
      corrupted.push_back(fock::annihilation(Qc, j, basis));
    annihilators = &corrupted;
  }

  const auto comm = fock::verify_commutation(Q, basis, 1e-12, annihilators);
  {
    char detail[64];
    std::snprintf(detail, sizeof detail, "j=%d k=%d s=%d", comm.worst_j,
                  comm.worst_k, comm.worst_degree);
    t.rows.push_back({cfg.negative_control ? "commutation-negative-control"
                                           : "commutation",
                      comm.max_residual, std::string(detail), comm.pass});
    all_pass = all_pass && comm.pass;
  }

  if (have_gram) {
    const auto adj = fock::verify_adjoint(Q, basis, g);
    char detail[64];
    std::snprintf(detail, sizeof detail, "j=%d s=%d", adj.worst_j, adj.worst_degree);
    t.rows.push_back({"adjoint", adj.max_residual, std::string(detail), adj.pass});
    all_pass = all_pass && adj.pass;
  }

  {
    Rng rng(derive_seed(cfg.seed, 0xF0CC));
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < cfg.trials; ++k) {
      const int d = static_cast<int>(rng.uniform_int(1, cfg.D));
      Word i(d);
      for (int l = 0; l < d; ++l)
        i[l] = static_cast<int>(rng.uniform_int(1, Q.size()));
      double diff = 0.0;
      ok = fock::wick_vector_check(Q, basis, i, 1e-12, &diff) && ok;
      worst = std::max(worst, diff);
    }
    t.rows.push_back({"wick-vectors", worst,
                      "trials=" + std::to_string(cfg.trials), ok});
    all_pass = all_pass && ok;
  }

  if (!cfg.dump_gram.empty() && have_gram) {
    std::ofstream f(cfg.dump_gram, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + cfg.dump_gram);
    fock::dump_gram_csv(g, f);
  }

  emit(t, cfg);
  return all_pass ? kExitPass : kExitVerificationFailure;
}

int cmd_clt(const RunConfig& cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  if (cfg.words.size() != 1)
    throw std::invalid_argument("clt needs exactly one --word");
  const Word w = parse_word(cfg.words[0]);

  Table t;
  echo_common(t, cfg, Q);
  t.config["word"] = dotted(w);
  t.config["m_grid"] = joined(cfg.m_grid);
  t.config["seeds"] = std::to_string(cfg.seeds);
  t.config["budget"] = std::to_string(cfg.budget);
  t.config["mc_samples"] = std::to_string(cfg.mc_samples);

  const auto study = analysis::clt_convergence_study(
      Q, w, cfg.m_grid, cfg.seeds, cfg.seed, cfg.budget, cfg.mc_samples);

  t.notes.push_back("limit=" + fmt_g(study.limit));
  t.notes.push_back("exact_err_slope=" + fmt_g(study.exact_err_slope));
  t.notes.push_back("expected_err_slope=" + fmt_g(study.expected_err_slope));
  t.notes.push_back("variance_slope=" + fmt_g(study.variance_slope));
  for (std::size_t k = 0; k < study.variance_per_m.size(); ++k)
    t.notes.push_back("variance_m" + std::to_string(cfg.m_grid[k]) + "=" +
                      fmt_g(study.variance_per_m[k]));

  t.columns = {"m", "seed", "exact", "expected", "err_exact", "err_expected"};
  for (const auto& row : study.rows)
    t.rows.push_back({row.m, row.seed, row.exact, row.expected, row.err_exact,
                      row.err_expected});

  if (!cfg.dump_eps.empty()) {
    // The table of the study's first row (same seed derivation).
    const std::uint64_t s0 =
        derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.m_grid[0]) << 20);
    const auto eps = spin::EpsilonTable::sample(Q, cfg.m_grid[0], s0);
    std::ofstream f(cfg.dump_eps, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open " + cfg.dump_eps);
    eps.dump(f);
  }

  emit(t, cfg);
  return kExitPass;
}

int cmd_hyper(RunConfig cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  if (cfg.p_grid.empty()) cfg.p_grid = {1.5, 2, 3, 4};
  if (cfg.r_grid.empty()) cfg.r_grid = cfg.p_grid;
  const SpinSetup s = spin_setup(cfg, Q);

  Table t;
  echo_common(t, cfg, Q);
  echo_spin(t, cfg, s);
  t.config["p_grid"] = joined(cfg.p_grid);
  t.config["r_grid"] = joined(cfg.r_grid);
  if (cfg.t_given) t.config["t"] = fmt_g(cfg.t);
  t.config["margin"] = fmt_g(cfg.margin);
  t.config["witness"] = cfg.no_witness ? "0" : "1";
  t.columns = {"mode", "p", "r", "t", "samples", "worst", "witness", "pass"};
  bool all_pass = true;

  int pair_index = 0;
  for (double p : cfg.p_grid) {
    for (double r : cfg.r_grid) {
      ++pair_index;
      const double theta =
          r > 1.0 ? (p - 1.0) / (r - 1.0) : std::numeric_limits<double>::infinity();
      // Contractive check at the given t, or at the threshold time.
      double tc = 0.0;
      bool contractive = false;
      if (cfg.t_given) {
        tc = cfg.t;
        contractive = std::exp(-2.0 * tc) <= theta + 1e-12;
      } else {
        tc = theta >= 1.0 ? 0.0 : -0.5 * std::log(theta);
        contractive = true;
      }
      if (contractive) {
        const auto rep = analysis::hypercontractivity_check(
            s.eps, s.G, p, r, tc, cfg.samples, derive_seed(cfg.seed, 0x100 + pair_index));
        t.rows.push_back({"check", p, r, tc, rep.samples, rep.worst, rep.witness,
                          rep.pass});
        all_pass = all_pass && rep.pass;
      }
      // Sharpness witness beyond the threshold by the margin.
      if (!cfg.no_witness && r > p) {
        double tw = 0.0;
        bool eligible = false;
        if (cfg.t_given) {
          tw = cfg.t;
          eligible = std::exp(-2.0 * tw) >= (1.0 + cfg.margin) * theta - 1e-15;
        } else if ((1.0 + cfg.margin) * theta <= 1.0) {
          tw = -0.5 * std::log((1.0 + cfg.margin) * theta);
          eligible = true;
        }
        if (eligible) {
          const auto rep =
              analysis::hypercontractivity_witness(s.eps, s.G, p, r, tw, cfg.margin);
          t.rows.push_back({"witness", p, r, tw, rep.samples, rep.worst,
                            rep.witness, rep.pass});
          all_pass = all_pass && rep.pass;
        }
      }
    }
  }

  emit(t, cfg);
  return all_pass ? kExitPass : kExitVerificationFailure;
}

int cmd_logsob(const RunConfig& cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  const SpinSetup s = spin_setup(cfg, Q);

  Table t;
  echo_common(t, cfg, Q);
  echo_spin(t, cfg, s);
  t.columns = {"mode", "samples", "worst", "ratio", "witness", "pass"};
  bool all_pass = true;

  const auto rep = analysis::log_sobolev_check(s.eps, s.G, cfg.samples,
                                               derive_seed(cfg.seed, 0x105));
  t.rows.push_back({"random", rep.samples, rep.worst, nullptr, rep.witness, rep.pass});
  all_pass = all_pass && rep.pass;

  // Near-tightness at f = 1 + 0.01 x_1: both sides are ~2e-4 and agree to
  // second order, so their ratio must sit within 5% of 1.
  {
    auto f = spin::SpinElement::scalar(s.eps, 1.0) +
             spin::SpinElement::from_word(s.eps, {spin::Letter{1, 1}}, 0.01);
    const auto [lhs, rhs] = analysis::log_sobolev_sides(f, s.G);
    const double ratio = rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    const bool pass = lhs <= rhs + 1e-8 && std::abs(ratio - 1.0) <= 0.05;
    t.rows.push_back({"tightness", 1, lhs - rhs, ratio, "f = 1 + 0.01 x_1", pass});
    all_pass = all_pass && pass;
  }

  emit(t, cfg);
  return all_pass ? kExitPass : kExitVerificationFailure;
}

int cmd_riesz(RunConfig cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  if (cfg.p_grid.empty()) cfg.p_grid = {2};
  const SpinSetup s = spin_setup(cfg, Q);

  Table t;
  echo_common(t, cfg, Q);
  echo_spin(t, cfg, s);
  t.config["p_grid"] = joined(cfg.p_grid);
  t.columns = {"p", "sample", "low_side", "high_side", "pass"};
  bool all_pass = true;
  double worst_p2 = 0.0;

  for (double p : cfg.p_grid) {
    for (int k = 0; k < cfg.samples; ++k) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      const auto f = analysis::random_element(s.eps, s.G, 4, rng, false);
      const auto ratio = analysis::riesz_ratio(f, p);
      bool pass = std::isfinite(ratio.low_side) && std::isfinite(ratio.high_side) &&
                  ratio.low_side > 0.0 && ratio.high_side > 0.0;
      if (p == 2.0) {
        const double dev = std::max(std::abs(ratio.low_side - 1.0),
                                    std::abs(ratio.high_side - 1.0));
        worst_p2 = std::max(worst_p2, dev);
        pass = pass && dev <= 1e-10;
      }
      t.rows.push_back({p, k, ratio.low_side, ratio.high_side, pass});
      all_pass = all_pass && pass;
    }
  }
  t.notes.push_back("worst_p2_deviation=" + fmt_g(worst_p2));

  emit(t, cfg);
  return all_pass ? kExitPass : kExitVerificationFailure;
}

int cmd_poincare(RunConfig cfg) {
  const StructureMatrix Q = load_structure_matrix(cfg);
  if (cfg.p_grid.empty()) cfg.p_grid = {2, 4, 8, 16};
  const SpinSetup s = spin_setup(cfg, Q);

  Table t;
  echo_common(t, cfg, Q);
  echo_spin(t, cfg, s);
  t.config["p_grid"] = joined(cfg.p_grid);
  t.columns = {"p", "sample", "ratio", "ratio_over_sqrt_p", "pass"};
  bool all_pass = true;
  double max_scaled = 0.0;

  for (double p : cfg.p_grid) {
    for (int k = 0; k < cfg.samples; ++k) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      const auto f = analysis::random_element(s.eps, s.G, 4, rng);
      const double ratio = analysis::poincare_ratio(f, p);
      const double scaled = ratio / std::sqrt(p);
      max_scaled = std::max(max_scaled, scaled);
      // The spectral-gap case p = 2 has constant exactly 1 (A >= 1 on
      // mean-zero elements); other p are only required to stay finite.
      bool pass = std::isfinite(ratio);
      if (p == 2.0) pass = pass && ratio <= 1.0 + 1e-10;
      t.rows.push_back({p, k, ratio, scaled, pass});
      all_pass = all_pass && pass;
    }
  }
  t.notes.push_back("max_ratio_over_sqrt_p=" + fmt_g(max_scaled));

  emit(t, cfg);
  return all_pass ? kExitPass : kExitVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"mixed q-Gaussian algebra toolkit"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--q-file", cfg.q_file, "structure matrix JSON file");
    sub->add_option("--q-inline", cfg.q_inline, "structure matrix JSON text");
    sub->add_option("--q-const", cfg.q_const, "constant coupling (with --N)");
    sub->add_option("--N", cfg.N, "generator count for --q-const");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* moments_cmd = app.add_subcommand("moments", "limit moments of label words");
  add_common(moments_cmd);
  moments_cmd->add_option("--word", cfg.words, "comma-separated labels (repeatable)");
  moments_cmd->callback([&] { cfg.command = "moments"; });

  auto* fock_cmd = app.add_subcommand(
      "fock-verify", "commutation, adjointness, Gram positivity, Wick vectors");
  add_common(fock_cmd);
  fock_cmd->add_option("--D", cfg.D, "truncation degree");
  fock_cmd->add_option("--trials", cfg.trials, "random Wick-vector trials");
  fock_cmd->add_flag("--negative-control", cfg.negative_control,
                     "corrupt the annihilators; the run must fail");
  fock_cmd->add_option("--dump-gram", cfg.dump_gram, "write Gram blocks as CSV");
  fock_cmd->callback([&] { cfg.command = "fock-verify"; });

  auto* clt_cmd = app.add_subcommand("clt", "finite-m convergence study");
  add_common(clt_cmd);
  clt_cmd->add_option("--word", cfg.words, "comma-separated labels");
  clt_cmd->add_option("--m-grid", cfg.m_grid, "column counts")->delimiter(',');
  clt_cmd->add_option("--seeds", cfg.seeds, "sign-table seeds per m");
  clt_cmd->add_option("--budget", cfg.budget, "exact-mode enumeration budget");
  clt_cmd->add_option("--mc-samples", cfg.mc_samples,
                      "Monte Carlo fallback size (0 = error on budget)");
  clt_cmd->add_option("--dump-eps", cfg.dump_eps, "write the first sign table");
  clt_cmd->callback([&] { cfg.command = "clt"; });

  auto add_spin = [&cfg](CLI::App* sub) {
    sub->add_option("--G", cfg.G, "generator count (0 = min(6, N*m))");
    sub->add_option("--m", cfg.m_cols, "spin-table columns");
    sub->add_option("--samples", cfg.samples, "random elements per grid point");
  };

  auto* hyper_cmd = app.add_subcommand("hyper", "hypercontractivity suite");
  add_common(hyper_cmd);
  add_spin(hyper_cmd);
  hyper_cmd->add_option("--p-grid", cfg.p_grid, "input exponents")->delimiter(',');
  hyper_cmd->add_option("--r-grid", cfg.r_grid, "output exponents")->delimiter(',');
  auto* t_opt = hyper_cmd->add_option("--t", cfg.t, "fixed semigroup time");
  hyper_cmd->add_option("--margin", cfg.margin, "witness threshold margin");
  hyper_cmd->add_flag("--no-witness", cfg.no_witness, "skip sharpness witnesses");
  hyper_cmd->callback([&, t_opt] {
    cfg.command = "hyper";
    cfg.t_given = t_opt->count() > 0;
  });

  auto* logsob_cmd = app.add_subcommand("logsob", "log-Sobolev suite");
  add_common(logsob_cmd);
  add_spin(logsob_cmd);
  logsob_cmd->callback([&] { cfg.command = "logsob"; });

  auto* riesz_cmd = app.add_subcommand("riesz", "Riesz-transform ratio suite");
  add_common(riesz_cmd);
  add_spin(riesz_cmd);
  riesz_cmd->add_option("--p-grid", cfg.p_grid, "exponents")->delimiter(',');
  riesz_cmd->callback([&] { cfg.command = "riesz"; });

  auto* poincare_cmd = app.add_subcommand("poincare", "L_p Poincare ratio suite");
  add_common(poincare_cmd);
  add_spin(poincare_cmd);
  poincare_cmd->add_option("--p-grid", cfg.p_grid, "exponents")->delimiter(',');
  poincare_cmd->callback([&] { cfg.command = "poincare"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (cfg.command == "moments") return cmd_moments(cfg);
    if (cfg.command == "fock-verify") return cmd_fock_verify(cfg);
    if (cfg.command == "clt") return cmd_clt(cfg);
    if (cfg.command == "hyper") return cmd_hyper(cfg);
    if (cfg.command == "logsob") return cmd_logsob(cfg);
    if (cfg.command == "riesz") return cmd_riesz(cfg);
    if (cfg.command == "poincare") return cmd_poincare(cfg);
    std::cerr << "unknown command\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("mixedq");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& a : full) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mixedq::cli
