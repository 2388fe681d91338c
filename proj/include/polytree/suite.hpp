#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polytree/scalars.hpp"

namespace polytree {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

/// The (q, lambda) grid shared by the identity suites: q in {2,3,5} with
/// real, purely imaginary and generic complex lambda, all further than 0.05
/// from the spectrum and with |lambda| > rho + 0.05.
std::vector<std::pair<int, Complex>> acceptance_grid();

/// Runs all acceptance criteria; deterministic given the seed.
std::vector<CheckResult> run_acceptance_suite(std::uint64_t seed);

/// Prints one pass/fail line per criterion; returns 0 iff everything passed.
int run_suite(std::ostream& out, std::uint64_t seed);

}  // namespace polytree
