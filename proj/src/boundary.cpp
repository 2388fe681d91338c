#include "polytree/boundary.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace polytree {

Rational arc_measure(int q, const Vertex& v) {
  if (q < 2) throw ParameterError("arc_measure: q must be >= 2");
  if (v.is_root()) return Rational(1);
  Rational denom(q + 1);
  for (int i = 1; i < v.depth(); ++i) denom *= q;
  return Rational(1) / denom;
}

int LocallyConstantFunction::resolution_depth() const {
  int d = 0;
  for (const Term& t : terms) d = std::max(d, t.arc_root.depth());
  return d;
}

Complex evaluate_function(const LocallyConstantFunction& g, const End& xi) {
  Complex v(0.0, 0.0);
  for (const auto& t : g.terms) {
    if (confluent_depth(t.arc_root, xi) == t.arc_root.depth()) {
      v += t.coefficient;
    }
  }
  return v;
}

Complex integrate_against_m(int q, const LocallyConstantFunction& g) {
  Complex v(0.0, 0.0);
  for (const auto& t : g.terms) {
    v += t.coefficient * to_double(arc_measure(q, t.arc_root));
  }
  return v;
}

namespace {

// Combined coefficient of g on dT_x for |x| >= resolution depth would be the
// value at any end through x; below resolution we split over children.
Complex coefficient_sum_on_prefix(const LocallyConstantFunction& g,
                                  const Vertex& x) {
  Complex c(0.0, 0.0);
  for (const auto& t : g.terms) {
    if (is_prefix(t.arc_root, x)) c += t.coefficient;
  }
  return c;
}

double integrate_abs_recursive(int q, const LocallyConstantFunction& g,
                               const Vertex& v, int resolution) {
  if (v.depth() >= resolution) {
    return std::abs(coefficient_sum_on_prefix(g, v)) *
           to_double(arc_measure(q, v));
  }
  double total = 0.0;
  for (const Vertex& ch : children(q, v)) {
    total += integrate_abs_recursive(q, g, ch, resolution);
  }
  return total;
}

}  // namespace

double integrate_abs_over_arc(int q, const LocallyConstantFunction& g,
                              const Vertex& v) {
  return integrate_abs_recursive(q, g, v, g.resolution_depth());
}

BoundaryDistribution BoundaryDistribution::absolutely_continuous(
    LocallyConstantFunction g) {
  BoundaryDistribution nu;
  nu.density = std::move(g);
  return nu;
}

BoundaryDistribution BoundaryDistribution::point_mass(End xi, Complex weight) {
  BoundaryDistribution nu;
  nu.point_masses.emplace_back(std::move(xi), weight);
  return nu;
}

BoundaryDistribution BoundaryDistribution::combination(
    std::vector<BoundaryDistribution> parts) {
  BoundaryDistribution nu;
  for (auto& p : parts) {
    for (auto& t : p.density.terms) nu.density.terms.push_back(std::move(t));
    for (auto& pm : p.point_masses) nu.point_masses.push_back(std::move(pm));
  }
  return nu;
}

Complex evaluate_distribution(int q, const BoundaryDistribution& nu,
                              const Vertex& v) {
  Complex out(0.0, 0.0);
  for (const auto& t : nu.density.terms) {
    // m(dT_{arc} intersect dT_v): the deeper arc when one word prefixes the
    // other, empty otherwise.
    if (is_prefix(t.arc_root, v)) {
      out += t.coefficient * to_double(arc_measure(q, v));
    } else if (is_prefix(v, t.arc_root)) {
      out += t.coefficient * to_double(arc_measure(q, t.arc_root));
    }
  }
  for (const auto& [xi, w] : nu.point_masses) {
    if (confluent_depth(v, xi) == v.depth()) out += w;
  }
  return out;
}

Complex density_value_at(const BoundaryDistribution& nu, const End& xi) {
  return evaluate_function(nu.density, xi);
}

namespace {

bool strip_line(std::string& line) {
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  const auto end = line.find_last_not_of(" \t\r\n");
  if (end == std::string::npos) return false;
  line.erase(end + 1);
  return true;
}

}  // namespace

LocallyConstantFunction parse_boundary_function(int q, std::istream& in) {
  LocallyConstantFunction g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!strip_line(line)) continue;
    std::istringstream is(line);
    std::string vertex_text;
    double re = 0.0, im = 0.0;
    if (!(is >> vertex_text >> re >> im)) {
      throw IoError("boundary function line " + std::to_string(lineno) +
                    ": expected '<vertex> <re> <im>'");
    }
    g.terms.push_back({parse_vertex(q, vertex_text), Complex(re, im)});
  }
  return g;
}

LocallyConstantFunction load_boundary_function(int q, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open boundary function file '" + path + "'");
  return parse_boundary_function(q, in);
}

BoundaryDistribution parse_distribution(int q, std::istream& in) {
  BoundaryDistribution nu;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!strip_line(line)) continue;
    std::istringstream is(line);
    std::string tag, point_text;
    double re = 0.0, im = 0.0;
    if (!(is >> tag >> point_text >> re >> im)) {
      throw IoError("distribution line " + std::to_string(lineno) +
                    ": expected 'ac|pm <point> <re> <im>'");
    }
    if (tag == "ac") {
      nu.density.terms.push_back({parse_vertex(q, point_text), Complex(re, im)});
    } else if (tag == "pm") {
      nu.point_masses.emplace_back(parse_end(q, point_text), Complex(re, im));
    } else {
      throw IoError("distribution line " + std::to_string(lineno) +
                    ": unknown tag '" + tag + "'");
    }
  }
  return nu;
}

BoundaryDistribution load_distribution(int q, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open distribution file '" + path + "'");
  return parse_distribution(q, in);
}

}  // namespace polytree
