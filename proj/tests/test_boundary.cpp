#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "polytree/boundary.hpp"
#include "polytree/operators.hpp"

using namespace polytree;

namespace {

Vertex v(std::initializer_list<int> letters) { return Vertex{letters}; }

End make_end(std::initializer_list<int> prefix, std::initializer_list<int> period) {
  return End(Vertex{prefix}, std::vector<int>(period));
}

}  // namespace

TEST_CASE("arc measure reference values") {
  CHECK(arc_measure(2, Vertex::root()) == Rational(1));
  CHECK(arc_measure(2, v({0, 0, 0})) == Rational(1) / 12);
  CHECK(arc_measure(3, v({1})) == Rational(1) / 4);
}

TEST_CASE("arc measures sum to 1 over any sphere partition") {
  for (int q : {2, 3}) {
    for (int depth : {1, 2, 3, 5}) {
      Rational total(0);
      for (const Vertex& x : ball_vertices(q, Vertex::root(), depth)) {
        if (x.depth() == depth) total += arc_measure(q, x);
      }
      CHECK(total == Rational(1));
    }
  }
}

TEST_CASE("locally constant function evaluation") {
  // g = 1_{dT_0} - 1_{dT_{0.1}}
  LocallyConstantFunction g;
  g.terms.push_back({v({0}), Complex(1.0, 0.0)});
  g.terms.push_back({v({0, 1}), Complex(-1.0, 0.0)});
  CHECK(g.resolution_depth() == 2);

  CHECK(evaluate_function(g, make_end({0, 1}, {1})) == Complex(0.0, 0.0));
  CHECK(evaluate_function(g, make_end({0, 0}, {1})) == Complex(1.0, 0.0));
  CHECK(evaluate_function(g, make_end({1}, {1})) == Complex(0.0, 0.0));
}

TEST_CASE("integration against m") {
  LocallyConstantFunction one;
  one.terms.push_back({Vertex::root(), Complex(1.0, 0.0)});
  CHECK(integrate_against_m(2, one) == Complex(1.0, 0.0));

  LocallyConstantFunction g;
  g.terms.push_back({v({0, 0}), Complex(1.0, 0.0)});
  CHECK(std::abs(integrate_against_m(2, g) - Complex(1.0 / 6.0, 0.0)) < 1e-16);
}

TEST_CASE("evaluate_function is constant below the resolution depth") {
  LocallyConstantFunction g;
  g.terms.push_back({v({0}), Complex(0.5, 1.0)});
  g.terms.push_back({v({0, 1}), Complex(-2.0, 0.25)});
  g.terms.push_back({v({1, 0}), Complex(3.0, 0.0)});
  const int res = g.resolution_depth();

  for (const Vertex& base : ball_vertices(2, Vertex::root(), res + 1)) {
    if (base.depth() != res + 1) continue;
    // all ends through `base` share the value at an arbitrary such end
    const End probe(base, {0});
    const Complex expected = evaluate_function(g, probe);
    const End other(base, {1});
    CHECK(evaluate_function(g, other) == expected);
  }
}

TEST_CASE("distribution additivity on a radius-8 ball") {
  LocallyConstantFunction g;
  g.terms.push_back({v({0}), Complex(1.0, -1.0)});
  g.terms.push_back({v({0, 1, 0}), Complex(0.5, 2.0)});
  g.terms.push_back({v({2}), Complex(-1.5, 0.0)});

  const BoundaryDistribution ac = BoundaryDistribution::absolutely_continuous(g);
  const BoundaryDistribution pm =
      BoundaryDistribution::point_mass(make_end({0, 1}, {1, 0}), Complex(2.0, 1.0));
  const BoundaryDistribution combo = BoundaryDistribution::combination({ac, pm});

  const int q = 2;
  for (const BoundaryDistribution& nu : {ac, pm, combo}) {
    for (const Vertex& x : ball_vertices(q, Vertex::root(), 7)) {
      Complex child_sum(0.0, 0.0);
      for (const Vertex& ch : children(q, x)) {
        child_sum += evaluate_distribution(q, nu, ch);
      }
      const Complex direct = evaluate_distribution(q, nu, x);
      CHECK(std::abs(direct - child_sum) < 1e-14);
    }
  }
}

TEST_CASE("partition mass is constant in depth") {
  const int q = 3;
  LocallyConstantFunction g;
  g.terms.push_back({v({1}), Complex(1.0, 0.5)});
  const BoundaryDistribution nu = BoundaryDistribution::combination(
      {BoundaryDistribution::absolutely_continuous(g),
       BoundaryDistribution::point_mass(make_end({2}, {0}), Complex(0.0, -1.0))});

  const Complex total = evaluate_distribution(q, nu, Vertex::root());
  for (int depth : {1, 2, 3, 4}) {
    Complex at_depth(0.0, 0.0);
    for (const Vertex& x : ball_vertices(q, Vertex::root(), depth)) {
      if (x.depth() == depth) at_depth += evaluate_distribution(q, nu, x);
    }
    CHECK(std::abs(at_depth - total) < 1e-14);
  }
}

TEST_CASE("point mass evaluates along its ray only") {
  const End xi = make_end({0}, {1});
  const BoundaryDistribution nu =
      BoundaryDistribution::point_mass(xi, Complex(1.0, 0.0));
  CHECK(evaluate_distribution(2, nu, ray_vertex(xi, 5)) == Complex(1.0, 0.0));
  CHECK(evaluate_distribution(2, nu, v({1})) == Complex(0.0, 0.0));
  CHECK(evaluate_distribution(2, nu, v({0, 0})) == Complex(0.0, 0.0));
}

TEST_CASE("uniform density reproduces arc measures") {
  LocallyConstantFunction one;
  one.terms.push_back({Vertex::root(), Complex(1.0, 0.0)});
  const BoundaryDistribution nu = BoundaryDistribution::absolutely_continuous(one);
  for (const Vertex& x : ball_vertices(2, Vertex::root(), 4)) {
    CHECK(std::abs(evaluate_distribution(2, nu, x) -
                   Complex(to_double(arc_measure(2, x)), 0.0)) < 1e-16);
  }
}

TEST_CASE("boundary function file format") {
  std::istringstream in(
      "# comment line\n"
      "0.1 1.5 -2.0\n"
      "\n"
      "o 0.25 0  # trailing comment\n");
  const LocallyConstantFunction g = parse_boundary_function(2, in);
  REQUIRE(g.terms.size() == 2);
  CHECK(g.terms[0].arc_root == v({0, 1}));
  CHECK(g.terms[0].coefficient == Complex(1.5, -2.0));
  CHECK(g.terms[1].arc_root == Vertex::root());

  std::istringstream bad("0.1 1.0\n");
  CHECK_THROWS_AS(parse_boundary_function(2, bad), IoError);
}

TEST_CASE("distribution file format") {
  std::istringstream in(
      "ac 0.1 1 0\n"
      "pm 0|1 0.5 0.5\n");
  const BoundaryDistribution nu = parse_distribution(2, in);
  REQUIRE(nu.density.terms.size() == 1);
  REQUIRE(nu.point_masses.size() == 1);
  CHECK(nu.point_masses[0].second == Complex(0.5, 0.5));

  std::istringstream bad("xx 0.1 1 0\n");
  CHECK_THROWS_AS(parse_distribution(2, bad), IoError);
}

TEST_CASE("integrate_abs_over_arc handles cancelling coefficients") {
  // |g| differs from both g and the sum of |c_j|: g = 1_{dT_0} - 2 * 1_{dT_{0.1}}
  LocallyConstantFunction g;
  g.terms.push_back({v({0}), Complex(1.0, 0.0)});
  g.terms.push_back({v({0, 1}), Complex(-2.0, 0.0)});
  // on dT_{0.0}: |1| * 1/6; on dT_{0.1}: |-1| * 1/6
  CHECK(integrate_abs_over_arc(2, g, v({0})) == doctest::Approx(1.0 / 3.0));
  CHECK(integrate_abs_over_arc(2, g, v({0, 1})) == doctest::Approx(1.0 / 6.0));
  CHECK(integrate_abs_over_arc(2, g, Vertex::root()) == doctest::Approx(1.0 / 3.0));
}
