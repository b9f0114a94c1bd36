#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "mixedq/cli.hpp"

namespace {

int run_cli(std::vector<std::string> args) { return mixedq::cli::run(args); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Data rows of a CSV table (everything after the '#' prefix block and the
// header line), split into cells.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("cli_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("moments command reports free and classical special cases") {
  TempFile out("moments_free.csv");
  int rc = run_cli({"moments", "--q-const", "0", "--N", "1", "--word", "1,1",
                    "--word", "1,1,1,1", "--word", "1,1,1,1,1,1", "--out", out.path});
  CHECK(rc == 0);
  auto rows = csv_rows(slurp(out.path));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "1.1");
  CHECK(std::stod(rows[0][1]) == 1.0);  // Catalan numbers at q = 0
  CHECK(std::stod(rows[1][1]) == 2.0);
  CHECK(std::stod(rows[2][1]) == 5.0);

  TempFile out2("moments_classical.csv");
  rc = run_cli({"moments", "--q-const", "1", "--N", "1", "--word", "1,1,1,1,1,1",
                "--out", out2.path});
  CHECK(rc == 0);
  auto rows2 = csv_rows(slurp(out2.path));
  CHECK(std::stod(rows2[0][1]) == 15.0);  // (d-1)!! at q = 1
}

TEST_CASE("moments command reads an inline structure matrix") {
  TempFile out("moments_inline.csv");
  const std::string q = R"({"N":2,"entries":[[1.0,0.25],[0.25,1.0]]})";
  int rc = run_cli({"moments", "--q-inline", q, "--word", "1,2,1,2", "--out", out.path});
  CHECK(rc == 0);
  auto rows = csv_rows(slurp(out.path));
  REQUIRE(rows.size() == 1);
  // Single crossing pairing: the mixed coupling comes out directly.
  CHECK(std::stod(rows[0][1]) == 0.25);
}

TEST_CASE("csv output carries a sorted config echo before the header") {
  TempFile out("moments_echo.csv");
  CHECK(run_cli({"moments", "--q-const", "0.5", "--N", "2", "--word", "1,1",
                 "--out", out.path}) == 0);
  const std::string text = slurp(out.path);
  CHECK(text.rfind("# ", 0) == 0);
  CHECK(text.find("# command=moments\n") != std::string::npos);
  CHECK(text.find("# N=2\n") != std::string::npos);
  CHECK(text.find("\nword,moment\n") != std::string::npos);
  // Config keys arrive sorted: N before command before q_const.
  CHECK(text.find("# N=2") < text.find("# command="));
  CHECK(text.find("# command=") < text.find("# q_const="));
}

TEST_CASE("json output parses and mirrors the csv content") {
  TempFile out("moments.json");
  CHECK(run_cli({"moments", "--q-const", "0", "--N", "1", "--word", "1,1,1,1",
                 "--format", "json", "--out", out.path}) == 0);
  auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j["config"]["command"] == "moments");
  REQUIRE(j["columns"].size() == 2);
  CHECK(j["columns"][0] == "word");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0][0] == "1.1.1.1");
  CHECK(j["rows"][0][1].get<double>() == 2.0);
}

TEST_CASE("repeated runs produce byte-identical output") {
  TempFile a("rerun_a.csv"), b("rerun_b.csv");
  std::vector<std::string> base = {"clt", "--q-const", "0.5", "--N", "1",
                                   "--word", "1,1,1,1", "--m-grid", "4,8",
                                   "--seeds", "3", "--seed", "9", "--out", ""};
  base.back() = a.path;
  CHECK(run_cli(base) == 0);
  base.back() = b.path;
  CHECK(run_cli(base) == 0);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("clt study reports the limit and per-m variances") {
  TempFile out("clt.csv");
  CHECK(run_cli({"clt", "--q-const", "0.5", "--N", "1", "--word", "1,1,1,1",
                 "--m-grid", "4,8", "--seeds", "2", "--out", out.path}) == 0);
  const std::string text = slurp(out.path);
  CHECK(text.find("# limit=2.5\n") != std::string::npos);
  CHECK(text.find("# variance_m4=") != std::string::npos);
  CHECK(text.find("# variance_m8=") != std::string::npos);
  auto rows = csv_rows(text);
  CHECK(rows.size() == 4);
  TempFile eps("clt_eps.csv");
  CHECK(run_cli({"clt", "--q-const", "0.5", "--N", "1", "--word", "1,1,1,1",
                 "--m-grid", "4", "--seeds", "1", "--out", out.path,
                 "--dump-eps", eps.path}) == 0);
  CHECK(!slurp(eps.path).empty());
}

TEST_CASE("fock verification passes normally and fails the negative control") {
  TempFile out("fock.csv");
  CHECK(run_cli({"fock-verify", "--q-const", "0.3", "--N", "2", "--D", "3",
                 "--trials", "5", "--out", out.path}) == 0);
  auto rows = csv_rows(slurp(out.path));
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) CHECK(row.back() == "true");

  TempFile gram("gram.csv");
  CHECK(run_cli({"fock-verify", "--q-const", "0.3", "--N", "2", "--D", "3",
                 "--trials", "5", "--out", out.path, "--dump-gram", gram.path}) == 0);
  CHECK(!slurp(gram.path).empty());

  CHECK(run_cli({"fock-verify", "--q-const", "0.3", "--N", "2", "--D", "3",
                 "--trials", "5", "--negative-control", "--out", out.path}) == 1);
}

TEST_CASE("inequality commands run at desk scale") {
  TempFile out("ineq.csv");
  CHECK(run_cli({"hyper", "--q-const", "0.4", "--N", "2", "--m", "2",
                 "--samples", "10", "--p-grid", "2", "--r-grid", "2,4",
                 "--out", out.path}) == 0);
  auto rows = csv_rows(slurp(out.path));
  CHECK(rows.size() >= 2);
  for (const auto& row : rows) CHECK(row.back() == "true");

  CHECK(run_cli({"logsob", "--q-const", "0.4", "--N", "2", "--m", "2",
                 "--samples", "20", "--out", out.path}) == 0);
  CHECK(run_cli({"riesz", "--q-const", "0.4", "--N", "2", "--m", "2",
                 "--samples", "10", "--out", out.path}) == 0);
  CHECK(slurp(out.path).find("# worst_p2_deviation=") != std::string::npos);
  CHECK(run_cli({"poincare", "--q-const", "0.4", "--N", "2", "--m", "2",
                 "--samples", "10", "--p-grid", "2,4", "--out", out.path}) == 0);
  CHECK(slurp(out.path).find("# max_ratio_over_sqrt_p=") != std::string::npos);
}

TEST_CASE("hyper with a fixed time covers only the eligible grid points") {
  TempFile out("hyper_t0.csv");
  // t = 0: contraction holds only for p >= r, and every p < r pair admits a
  // sharpness witness since the identity map inflates norms.
  CHECK(run_cli({"hyper", "--q-const", "0.2", "--N", "2", "--m", "2",
                 "--samples", "5", "--p-grid", "1.5,2", "--r-grid", "1.5,2",
                 "--t", "0", "--out", out.path}) == 0);
  auto rows = csv_rows(slurp(out.path));
  int checks = 0, witnesses = 0;
  for (const auto& row : rows) {
    if (row[0] == "check") ++checks;
    if (row[0] == "witness") ++witnesses;
    CHECK(row.back() == "true");
  }
  CHECK(checks == 3);    // (1.5,1.5), (2,1.5), (2,2)
  CHECK(witnesses == 1); // (1.5,2)
}

TEST_CASE("configuration errors exit with status 2") {
  // No structure matrix at all.
  CHECK(run_cli({"moments", "--word", "1,1"}) == 2);
  // Conflicting sources.
  CHECK(run_cli({"moments", "--q-const", "0", "--N", "1", "--q-inline",
                 R"({"N":1,"entries":[[1]]})", "--word", "1,1"}) == 2);
  // Entry out of range.
  CHECK(run_cli({"moments", "--q-inline", R"({"N":1,"entries":[[1.5]]})",
                 "--word", "1,1"}) == 2);
  // Missing file.
  CHECK(run_cli({"moments", "--q-file", "no_such_file.json", "--word", "1,1"}) == 2);
  // Unknown format never reaches the command.
  CHECK(run_cli({"moments", "--q-const", "0", "--N", "1", "--word", "1,1",
                 "--format", "xml"}) == 2);
  // No word given.
  CHECK(run_cli({"moments", "--q-const", "0", "--N", "1"}) == 2);
  // Unknown subcommand.
  CHECK(run_cli({"fourier"}) == 2);
  // Exhausted enumeration budget with Monte Carlo disabled.
  CHECK(run_cli({"clt", "--q-const", "0.5", "--N", "1", "--word", "1,1,1,1",
                 "--m-grid", "32", "--seeds", "1", "--budget", "10"}) == 2);
}
