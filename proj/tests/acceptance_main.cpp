// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure.  The same checks back the CLI `suite` subcommand.

#include <cstdlib>
#include <iostream>
#include <string>

#include "polytree/suite.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20250810ull;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  std::cout << "# polytree acceptance suite (seed " << seed << ")\n";
  return polytree::run_suite(std::cout, seed);
}
