#include "mixedq/cli.hpp"

int main(int argc, char** argv) { return mixedq::cli::run(argc, argv); }
