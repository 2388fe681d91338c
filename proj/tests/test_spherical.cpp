#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "polytree/operators.hpp"
#include "polytree/spherical.hpp"

using namespace polytree;

namespace {

Vertex v(std::initializer_list<int> letters) { return Vertex{letters}; }

End make_end(std::initializer_list<int> prefix, std::initializer_list<int> period) {
  return End(Vertex{prefix}, std::vector<int>(period));
}

std::vector<SpectralContext> small_grid() {
  std::vector<SpectralContext> out;
  for (int q : {2, 3, 5}) {
    const double rho = make_tree_params(q).rho;
    for (Complex lambda : {Complex(1.0, 0.0), Complex(2.0, 0.0),
                           Complex(rho + 0.07, 0.0), Complex(0.0, 1.3),
                           Complex(1.0, 1.0), Complex(-1.2, 0.8)}) {
      out.push_back(make_context(q, lambda));
    }
  }
  return out;
}

// Independent oracle: Phi_n(x) as a brute-force sum over all boundary cells
// at depth |x|+1, where the integrand K hor_n is constant per cell.  Uses
// only word arithmetic and the plain kernel definition.
Complex phi_n_bruteforce(const KernelSpec& spec, const Vertex& x) {
  const int q = spec.ctx.q();
  const int depth = x.depth() + 1;
  Complex total(0.0, 0.0);
  for (const Vertex& w : ball_vertices(q, Vertex::root(), depth)) {
    if (w.depth() != depth) continue;
    const int conf = confluent(x, w).depth();
    const int hor = x.depth() - 2 * conf;
    Complex hor_term(1.0, 0.0);
    for (int i = 0; i < spec.n; ++i) {
      hor_term *= Complex(static_cast<double>(hor), 0.0) / spec.ctx.s;
    }
    hor_term /= factorial(spec.n) * std::pow(1.0, 0);
    total += to_double(arc_measure(q, w)) * F_pow(spec.ctx, hor) * hor_term;
  }
  return total;
}

}  // namespace

TEST_CASE("spherical recursion start and reference values") {
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  CHECK(phi_recursion(ctx, 0) == Complex(1.0, 0.0));
  CHECK(phi_recursion(ctx, 1) == ctx.lambda);
  // phi_2 = ((q+1) lambda^2 - 1)/q
  CHECK(std::abs(phi_recursion(ctx, 2) - Complex(5.5, 0.0)) < 1e-14);
  CHECK(std::abs(phi_closed_form(ctx, 2) - Complex(5.5, 0.0)) < 1e-12);
}

TEST_CASE("phi is identically 1 at lambda = 1") {
  for (int q : {2, 3, 5}) {
    const SpectralContext ctx = make_context(q, Complex(1.0, 0.0));
    for (int k = 0; k <= 60; ++k) {
      CHECK(std::abs(phi_recursion(ctx, k) - 1.0) < 1e-13);
      CHECK(std::abs(phi_closed_form(ctx, k) - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("recursion and closed form agree to 1e-10 for k <= 60") {
  for (const SpectralContext& ctx : small_grid()) {
    const SphericalTable table = build_spherical_table(ctx, 60);
    for (int k = 0; k <= 60; ++k) {
      const Complex a = table.values[k];
      const Complex b = phi_closed_form(ctx, k);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("spherical table satisfies the three-term recursion") {
  for (const SpectralContext& ctx : small_grid()) {
    const SphericalTable t = build_spherical_table(ctx, 40);
    const double q = ctx.q();
    for (int k = 1; k + 1 <= 40; ++k) {
      const Complex residual = ctx.lambda * t.values[k] -
                               t.values[k - 1] / (q + 1.0) -
                               q / (q + 1.0) * t.values[k + 1];
      CHECK(std::abs(residual) < 1e-10 * std::max(1.0, std::abs(t.values[k + 1])));
    }
  }
}

TEST_CASE("Phi basics") {
  const SpectralContext ctx = make_context(2, Complex(1.5, 0.5));
  CHECK(Phi(ctx, Vertex::root()) == Complex(1.0, 0.0));
  CHECK(Phi_two_point(ctx, v({0, 1}), v({0, 1})) == Complex(1.0, 0.0));
  CHECK(std::abs(Phi(ctx, v({2})) - ctx.lambda) < 1e-14);
  // radial: any two vertices at the same depth
  CHECK(Phi(ctx, v({0, 1, 0})) == Phi(ctx, v({2, 0, 1})));
  // nonvanishing on samples
  for (int k = 0; k <= 40; ++k) CHECK(std::abs(phi(ctx, k)) > 0.0);
}

TEST_CASE("martin kernel reference points") {
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  const End xi = make_end({0}, {1});
  const KernelSpec spec1 = make_kernel_spec(ctx, 1);

  CHECK(martin_kernel(ctx, Vertex::root(), xi) == Complex(1.0, 0.0));
  CHECK(hor_factor(spec1, Vertex::root(), xi) == Complex(0.0, 0.0));

  const Complex k1 = martin_kernel(ctx, ray_vertex(xi, 1), xi);
  CHECK(std::abs(k1 - 5.645751311064591) < 1e-12);  // 1/F at lambda=2

  const KernelSpec spec0 = make_kernel_spec(ctx, 0);
  CHECK(hor_factor(spec0, v({1, 0}), xi) == Complex(1.0, 0.0));
}

TEST_CASE("martin kernel is lambda-harmonic: mean value identity") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0))}) {
    const End xi = make_end({0}, {1});
    for (const Vertex& x : ball_vertices(ctx.q(), Vertex::root(), 10)) {
      Complex neighbor_sum = x.is_root() ? Complex(0, 0)
                                         : martin_kernel(ctx, x.parent(), xi);
      for (const Vertex& ch : children(ctx.q(), x)) {
        neighbor_sum += martin_kernel(ctx, ch, xi);
      }
      const Complex lhs = ctx.lambda * martin_kernel(ctx, x, xi);
      const Complex rhs = neighbor_sum / (ctx.q() + 1.0);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    }
  }
}

TEST_CASE("arc integral: descent oracle vs closed fast path") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0)),
                                     make_context(2, Complex(0.0, 1.3))}) {
    for (int n : {0, 1, 2, 4}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      const std::vector<Vertex> xs = {Vertex::root(), v({0}), v({0, 1}),
                                      v({1, 0, 1}), v({0, 1, 1, 0, 1}),
                                      v({2, 0, 0, 1, 0, 1, 0})};
      const std::vector<Vertex> arcs = {Vertex::root(), v({0}), v({1}),
                                        v({0, 1}), v({0, 1, 1}), v({2, 1}),
                                        v({0, 1, 1, 0, 1, 0})};
      for (const Vertex& x : xs) {
        for (const Vertex& arc : arcs) {
          const Complex slow = integrate_kernel_over_arc(spec, x, arc);
          const Complex fast =
              integrate_kernel_over_arc_scaled(spec, x, arc).to_complex();
          CHECK(std::abs(slow - fast) <=
                1e-11 * std::max(1.0, std::abs(slow)));
        }
      }
    }
  }
}

TEST_CASE("arc integral at the root vertex") {
  const SpectralContext ctx = make_context(2, Complex(1.0, 1.0));
  for (int n : {0, 1, 3}) {
    const KernelSpec spec = make_kernel_spec(ctx, n);
    for (const Vertex& arc : {v({0}), v({1, 1}), Vertex::root()}) {
      const Complex val = integrate_kernel_over_arc(spec, Vertex::root(), arc);
      const Complex expected =
          (n == 0) ? Complex(to_double(arc_measure(2, arc)), 0.0) : Complex(0, 0);
      CHECK(std::abs(val - expected) < 1e-15);
    }
  }
}

TEST_CASE("children partition sums to the whole-arc integral") {
  const SpectralContext ctx = make_context(3, Complex(2.0, -1.0));
  const KernelSpec spec = make_kernel_spec(ctx, 2);
  const Vertex x = v({0, 1, 0, 2});
  for (const Vertex& arc : {Vertex::root(), v({0}), v({0, 1}), v({1})}) {
    ScaledComplex child_sum = ScaledComplex::zero();
    for (const Vertex& ch : children(3, arc)) {
      child_sum = child_sum + integrate_kernel_over_arc_scaled(spec, x, ch);
    }
    const Complex whole = integrate_kernel_over_arc_scaled(spec, x, arc).to_complex();
    CHECK(std::abs(child_sum.to_complex() - whole) <= 1e-12 * std::max(1.0, std::abs(whole)));
  }
}

TEST_CASE("Phi_n against the brute-force cell oracle") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0))}) {
    for (int n : {0, 1, 2, 3}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      for (const Vertex& x : {Vertex::root(), v({0}), v({1, 0}),
                              v({0, 1, 0, 0}), v({1, 1, 1, 0, 1, 0})}) {
        const Complex brute = phi_n_bruteforce(spec, x);
        const Complex fast = Phi_n(spec, x);
        CHECK(std::abs(brute - fast) <= 1e-11 * std::max(1.0, std::abs(brute)));
      }
    }
  }
}

TEST_CASE("Phi_0 coincides with the spherical function") {
  for (const SpectralContext& ctx : small_grid()) {
    const KernelSpec spec = make_kernel_spec(ctx, 0);
    for (int radius : {0, 1, 2, 5, 13, 27, 40}) {
      const ScaledComplex pn = phi_n_scaled(spec, radius);
      const ScaledComplex ph = phi_scaled(ctx, radius);
      const Complex ratio = (pn / ph).to_complex();
      CHECK(std::abs(ratio - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Phi_n forced values: Phi_n(o) and Phi_1 at radius 1") {
  for (const SpectralContext& ctx : small_grid()) {
    for (int n : {1, 2, 3, 4}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      CHECK(Phi_n(spec, Vertex::root()) == Complex(0.0, 0.0));
    }
    const KernelSpec spec1 = make_kernel_spec(ctx, 1);
    CHECK(std::abs(Phi_n(spec1, v({0})) - Complex(-1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("Phi_n is radial") {
  const SpectralContext ctx = make_context(2, Complex(1.0, 1.0));
  const KernelSpec spec = make_kernel_spec(ctx, 2);
  CHECK(Phi_n(spec, v({0, 1, 1})) == Phi_n(spec, v({2, 0, 0})));
}

TEST_CASE("normalization identity: partition of mu_x has total mass 1") {
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  for (int n : {0, 1, 2}) {
    const KernelSpec spec = make_kernel_spec(ctx, n);
    for (const Vertex& x : {v({0, 1}), v({0, 1, 0, 1}), v({1, 1, 1, 0, 0, 1})}) {
      const ScaledComplex denom = phi_n_scaled(spec, x.depth());
      REQUIRE(!denom.is_zero());
      // partition: all arcs at depth 2 (for q=2: 6 arcs)
      ScaledComplex total = ScaledComplex::zero();
      for (const Vertex& arc : ball_vertices(2, Vertex::root(), 2)) {
        if (arc.depth() != 2) continue;
        total = total + integrate_kernel_over_arc_scaled(spec, x, arc);
      }
      CHECK(std::abs((total / denom).to_complex() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("asymptotics: reference case lambda = 1") {
  const SpectralContext ctx = make_context(2, Complex(1.0, 0.0));
  const KernelSpec spec = make_kernel_spec(ctx, 0);
  // Fc(1) = ac(1) = 1: the asymptotic is identically 1 and Phi_0 == 1, so
  // the deviation sits at the rounding floor of s(1) and keeps decaying
  for (int radius : {1, 5, 50}) {
    CHECK(std::abs(asymptotic_Phi_n(spec, radius) - 1.0) < 1e-12);
    CHECK(asymptotic_deviation(spec, radius).abs_unchecked() < 1e-15);
  }
  CHECK(C_lambda(ctx) == doctest::Approx(1.0));
  CHECK(R_threshold(spec) == 1);
}

TEST_CASE("asymptotic deviation matches the naive ratio where representable") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0))}) {
    for (int n : {0, 1, 2}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      for (int radius : {3, 6, 10, 14}) {
        const Complex ratio =
            (phi_n_scaled(spec, radius) / asymptotic_phi_n_scaled(spec, radius))
                .to_complex();
        const double naive = std::abs(ratio - 1.0);
        const double exact = asymptotic_deviation(spec, radius).to_complex().real();
        if (naive > 1e-9) {
          CHECK(exact == doctest::Approx(naive).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("asymptotic deviation decreases across {50,100,200,300}") {
  for (const SpectralContext& ctx : small_grid()) {
    for (int n : {0, 1, 2, 3}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      double prev_log = std::numeric_limits<double>::infinity();
      for (int radius : {50, 100, 200, 300}) {
        const ScaledComplex dev = asymptotic_deviation(spec, radius);
        if (!dev.is_zero()) {
          CHECK(dev.log_abs() < prev_log);
          prev_log = dev.log_abs();
        }
      }
    }
  }
}

TEST_CASE("lower-order polyspherical functions vanish relatively") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0))}) {
    for (int n : {1, 2, 3}) {
      for (int k = 0; k < n; ++k) {
        const KernelSpec spec_k = make_kernel_spec(ctx, k);
        const KernelSpec spec_n = make_kernel_spec(ctx, n);
        double prev = std::numeric_limits<double>::infinity();
        for (int radius : {50, 100, 200, 300}) {
          const double log_ratio = phi_n_scaled(spec_k, radius).log_abs() -
                                   phi_n_scaled(spec_n, radius).log_abs();
          CHECK(log_ratio < prev);
          prev = log_ratio;
        }
        CHECK(prev < 0.0);  // ratio below 1 by radius 300
      }
    }
  }
}

TEST_CASE("|Phi|_n / |Phi_n| approaches C(lambda)/|ac|") {
  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(2, Complex(1.0, 1.0)),
                                     make_context(3, Complex(-1.2, 0.8))}) {
    for (int n : {0, 1, 2}) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      const double limit = C_lambda(ctx) / std::abs(ctx.ac);

      // direct ratio agrees with the limit to within the deviation bound
      for (int radius : {20, 60}) {
        const double direct = (phi_abs_n_scaled(spec, radius) /
                               abs_scaled(phi_n_scaled(spec, radius)))
                                  .to_complex()
                                  .real();
        const double dev_bound =
            total_variation_deviation(spec, radius).abs_unchecked();
        CHECK(std::abs(direct - limit) <= dev_bound + 1e-12 * limit);
      }

      // trend across the deep radii
      double prev = std::numeric_limits<double>::infinity();
      for (int radius : {50, 100, 200, 300}) {
        const ScaledComplex dev = total_variation_deviation(spec, radius);
        if (!dev.is_zero()) {
          CHECK(dev.log_abs() < prev);
          prev = dev.log_abs();
        }
      }
    }
  }
}

TEST_CASE("Phi_abs_n reference: n = 0 at lambda real > rho is Phi itself") {
  // for real lambda > rho all kernel values are positive reals
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  const KernelSpec spec = make_kernel_spec(ctx, 0);
  for (int radius : {1, 3, 9}) {
    const double abs_val = Phi_abs_n(spec, Vertex{std::vector<int>(radius, 0)});
    const Complex plain = phi(ctx, radius);
    CHECK(abs_val == doctest::Approx(plain.real()).epsilon(1e-12));
  }
}

TEST_CASE("R_threshold and regime errors") {
  const SpectralContext resolvent = make_context(2, Complex(0.3, 0.4));
  const KernelSpec spec = make_kernel_spec(resolvent, 0);
  CHECK_THROWS_AS(R_threshold(spec), RegimeError);
  CHECK_THROWS_AS(asymptotic_Phi_n(spec, 10), RegimeError);
  CHECK_THROWS_AS(asymptotic_deviation(spec, 10), RegimeError);

  for (const SpectralContext& ctx : {make_context(2, Complex(2.0, 0.0)),
                                     make_context(3, Complex(1.0, 1.0))}) {
    for (int n : {0, 1, 3}) {
      const int r = R_threshold(make_kernel_spec(ctx, n));
      CHECK(r >= 1);
      CHECK(r <= 200);
    }
  }
}

TEST_CASE("kernel spec validation") {
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  CHECK_THROWS_AS(make_kernel_spec(ctx, -1), ParameterError);
  CHECK_THROWS_AS(make_kernel_spec(ctx, 9), ParameterError);
}
