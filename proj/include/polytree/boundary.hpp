#pragma once

#include <iosfwd>
#include <vector>

#include "polytree/tree.hpp"

namespace polytree {

/// m(dT_v): 1 at the root, 1/((q+1) q^{|v|-1}) otherwise.  Exact rational so
/// that partition identities hold with no tolerance.
Rational arc_measure(int q, const Vertex& v);

/// Finite linear combination g = sum_j c_j 1_{dT_{v_j}}.  Overlapping arcs
/// are allowed; the semantics is the pointwise sum.
struct LocallyConstantFunction {
  struct Term {
    Vertex arc_root;
    Complex coefficient;
  };
  std::vector<Term> terms;

  /// Depth below which g is constant on every arc (max |v_j|, 0 when empty).
  int resolution_depth() const;
};

/// Pointwise value at an end: sum of coefficients of arcs containing xi.
Complex evaluate_function(const LocallyConstantFunction& g, const End& xi);

/// Integral against the uniform distribution m.
Complex integrate_against_m(int q, const LocallyConstantFunction& g);

/// Integral of |g| over dT_v against m (cellwise exact; |g| is again locally
/// constant).
double integrate_abs_over_arc(int q, const LocallyConstantFunction& g,
                              const Vertex& v);

/// Finitely additive complex distribution on boundary arcs, represented as
/// an absolutely continuous part (a locally constant density) plus finitely
/// many point masses.  Each closed variant of the spec is a special case and
/// the class is closed under finite combination.
struct BoundaryDistribution {
  LocallyConstantFunction density;
  std::vector<std::pair<End, Complex>> point_masses;

  static BoundaryDistribution absolutely_continuous(LocallyConstantFunction g);
  static BoundaryDistribution point_mass(End xi, Complex weight);
  static BoundaryDistribution combination(std::vector<BoundaryDistribution> parts);
};

/// nu(dT_v).
Complex evaluate_distribution(int q, const BoundaryDistribution& nu,
                              const Vertex& v);

/// Value of the absolutely continuous part's density at an end (the
/// Radon-Nikodym derivative with respect to m); point masses contribute 0.
Complex density_value_at(const BoundaryDistribution& nu, const End& xi);

// ---------------------------------------------------------------------------
// File formats.  Boundary functions: one term per line, "<vertex> <re> <im>"
// with '#' comments.  Distributions add a leading tag per line:
//   ac <vertex> <re> <im>
//   pm <end> <re> <im>
// ---------------------------------------------------------------------------

LocallyConstantFunction parse_boundary_function(int q, std::istream& in);
LocallyConstantFunction load_boundary_function(int q, const std::string& path);
BoundaryDistribution parse_distribution(int q, std::istream& in);
BoundaryDistribution load_distribution(int q, const std::string& path);

}  // namespace polytree
