#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "polytree/spectral.hpp"

using namespace polytree;

namespace {

// The lambda grid used across the identity suites: q in {2,3,5}, values
// real, purely imaginary and generic complex, all at distance > 0.05 from
// the spectrum.
std::vector<Complex> lambda_grid(double rho) {
  std::vector<Complex> grid;
  for (double re : {rho + 0.055, rho + 0.2, 1.0, 1.3, 1.7, 2.0, 3.0, 5.0,
                    -1.1, -2.5}) {
    grid.emplace_back(re, 0.0);
  }
  for (double im : {rho + 0.1, 1.6, -3.0, -(rho + 0.1)}) {
    grid.emplace_back(0.0, im);
  }
  grid.emplace_back(1.0, 1.0);
  grid.emplace_back(-1.0, 0.7);
  grid.emplace_back(2.0, -3.0);
  grid.emplace_back(-2.0, -2.0);
  grid.emplace_back(0.5, 1.2);
  grid.emplace_back(3.0, 0.4);
  return grid;
}

}  // namespace

TEST_CASE("tree params") {
  const TreeParams p = make_tree_params(2);
  CHECK(p.rho == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0));
  CHECK(p.rho > 0.0);
  CHECK(p.rho < 1.0);
  CHECK_THROWS_AS(make_tree_params(1), ParameterError);
}

TEST_CASE("context at q=2, lambda=1: exact reference values") {
  const SpectralContext ctx = make_context(2, Complex(1.0, 0.0));
  CHECK(std::abs(ctx.F - 0.5) < 1e-14);
  CHECK(std::abs(ctx.Fc - 1.0) < 1e-14);
  CHECK(std::abs(ctx.s - Complex(1.0 / 3.0, 0.0)) < 1e-14);
  CHECK(std::abs(ctx.a) < 1e-14);
  CHECK(std::abs(ctx.ac - 1.0) < 1e-14);
  CHECK(ctx.regime == SpectralRegime::OutsideDisk);
}

TEST_CASE("context at q=2, lambda=2 matches the quadratic-root oracle") {
  const SpectralContext ctx = make_context(2, Complex(2.0, 0.0));
  const auto [small, big] = quadratic_roots_oracle(2, Complex(2.0, 0.0));

  // frozen from the oracle: s = 2 sqrt(7)/3, F = (3/4)(2 - s)
  CHECK(std::abs(ctx.F - 0.17712434446770464) < 1e-14);
  CHECK(std::abs(ctx.Fc - 2.8228756555322954) < 1e-14);

  CHECK(std::abs(small - ctx.F) < 1e-12);
  CHECK(std::abs(big - ctx.Fc) < 1e-12);
  CHECK(std::abs(small) < 1.0 / std::sqrt(2.0));
}

TEST_CASE("lambda inside or near the spectrum is rejected") {
  CHECK_THROWS_AS(make_context(2, Complex(0.5, 0.0)), SpectrumError);
  CHECK_THROWS_AS(make_context(2, Complex(0.0, 0.0)), SpectrumError);
  const double rho = make_tree_params(2).rho;
  CHECK_THROWS_AS(make_context(2, Complex(rho, 1e-12)), SpectrumError);
  CHECK_THROWS_AS(make_context(3, Complex(-0.2, 5e-10)), SpectrumError);
  CHECK_THROWS_AS(make_context(1, Complex(2.0, 0.0)), ParameterError);

  // resolvent-only: off the segment but inside the disk
  const SpectralContext ctx = make_context(2, Complex(0.3, 0.4));
  CHECK(ctx.regime == SpectralRegime::ResolventOnly);
}

TEST_CASE("quadratic roots oracle reference points") {
  {
    const auto [small, big] = quadratic_roots_oracle(2, Complex(1.0, 0.0));
    CHECK(std::abs(small - 0.5) < 1e-14);
    CHECK(std::abs(big - 1.0) < 1e-14);
  }
  {
    const auto [small, big] = quadratic_roots_oracle(3, Complex(1.0, 0.0));
    CHECK(std::abs(small - 1.0 / 3.0) < 1e-14);
    CHECK(std::abs(big - 1.0) < 1e-14);
  }
  {
    // purely imaginary lambda: discriminant on the negative real axis
    const auto [small, big] = quadratic_roots_oracle(2, Complex(0.0, 1.5));
    CHECK(std::abs(small * big - 0.5) < 1e-14);
    CHECK(std::abs(small) < std::abs(big));
  }
}

TEST_CASE("all five context identities hold on the grid") {
  int points = 0;
  for (int q : {2, 3, 5}) {
    const double rho = make_tree_params(q).rho;
    for (Complex lambda : lambda_grid(rho)) {
      CAPTURE(q);
      CAPTURE(lambda.real());
      CAPTURE(lambda.imag());
      const SpectralContext ctx = make_context(q, lambda);
      const SpectralResiduals res = spectral_residuals(ctx);
      CHECK(res.quadratic < 1e-12);
      CHECK(res.product < 1e-14);
      CHECK(res.coefficient < 1e-14);
      CHECK(res.s_squared < 1e-12);
      CHECK(res.margin_lower > 1e-10);
      CHECK(res.margin_upper > 1e-10);
      ++points;
    }
  }
  CHECK(points >= 50);
}

TEST_CASE("oracle equivalence on the grid") {
  for (int q : {2, 3, 5}) {
    const double rho = make_tree_params(q).rho;
    for (Complex lambda : lambda_grid(rho)) {
      CAPTURE(q);
      CAPTURE(lambda.real());
      CAPTURE(lambda.imag());
      const SpectralContext ctx = make_context(q, lambda);
      const auto [small, big] = quadratic_roots_oracle(q, lambda);
      CHECK(std::abs(small - ctx.F) < 1e-12);
      CHECK(std::abs(big - ctx.Fc) < 1e-12);
    }
  }
}

TEST_CASE("conjugation symmetry") {
  for (int q : {2, 3, 5}) {
    const double rho = make_tree_params(q).rho;
    for (Complex lambda : lambda_grid(rho)) {
      const SpectralContext ctx = make_context(q, lambda);
      const SpectralContext conj_ctx = make_context(q, std::conj(lambda));
      CHECK(std::abs(conj_ctx.s - std::conj(ctx.s)) < 1e-14);
      CHECK(std::abs(conj_ctx.F - std::conj(ctx.F)) < 1e-14);
      CHECK(std::abs(conj_ctx.Fc - std::conj(ctx.Fc)) < 1e-14);
      CHECK(std::abs(conj_ctx.a - std::conj(ctx.a)) < 1e-14);
      CHECK(std::abs(conj_ctx.ac - std::conj(ctx.ac)) < 1e-14);
    }
  }
}

TEST_CASE("F_pow at reference points") {
  const SpectralContext unit = make_context(2, Complex(1.0, 0.0));
  CHECK(std::abs(F_pow(unit, 3) - 0.125) < 1e-15);
  CHECK(std::abs(F_pow(unit, -1) - 2.0) < 1e-14);  // q Fc(1) = 2
  CHECK(F_pow(unit, 0) == Complex(1.0, 0.0));

  const SpectralContext two = make_context(2, Complex(2.0, 0.0));
  const Complex f2 = F_pow(two, 2);
  CHECK(std::abs(f2 - two.F * two.F) < 1e-15);
  CHECK(f2.real() == doctest::Approx(0.031373).epsilon(1e-4));
}

TEST_CASE("F_pow: direct and log-scale paths agree across the seam") {
  const SpectralContext ctx = make_context(3, Complex(1.0, 1.0));
  for (long long k : {60ll, 64ll, 65ll, 80ll, -60ll, -64ll, -65ll, -80ll}) {
    const ScaledComplex scaled = F_pow_scaled(ctx, k);
    const Complex direct = F_pow(ctx, k);
    CHECK(std::abs(scaled.to_complex() - direct) <= 1e-10 * std::abs(direct));
  }
  // inverse relation F^{-k} = (q Fc)^k
  for (long long k : {1ll, 7ll, 33ll, 100ll}) {
    const Complex lhs = F_pow(ctx, -k);
    Complex rhs(1.0, 0.0);
    for (long long i = 0; i < k; ++i) rhs *= 3.0 * ctx.Fc;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}
