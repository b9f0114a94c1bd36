#pragma once

#include <string>
#include <vector>

// Command-line entry point: `mixedq <command> --q-file Q.json --seed S
// --out results.csv [--format json] [grids...]`. Commands: moments,
// fock-verify, clt, hyper, logsob, riesz, poincare. Every run is fully
// determined by its flags; the effective config is echoed as `#` header
// lines (CSV) or a "config" object (JSON), and reruns are byte-identical.
//
// Exit codes: 0 pass, 1 verification failure, 2 configuration error.

namespace mixedq::cli {

int run(int argc, const char* const* argv);

// Same, from arguments without the program name (convenience for tests).
int run(const std::vector<std::string>& args);

}  // namespace mixedq::cli
