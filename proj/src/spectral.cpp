#include "polytree/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace polytree {

TreeParams make_tree_params(int q) {
  if (q < 2) throw ParameterError("q must be >= 2");
  return TreeParams{q, 2.0 * std::sqrt(static_cast<double>(q)) / (q + 1)};
}

double distance_to_spectrum(int q, Complex lambda) {
  const double rho = make_tree_params(q).rho;
  const double re = lambda.real();
  const double im = lambda.imag();
  if (re > rho) return std::abs(lambda - Complex(rho, 0.0));
  if (re < -rho) return std::abs(lambda + Complex(rho, 0.0));
  return std::abs(im);
}

SpectralContext make_context(int q, Complex lambda) {
  const TreeParams params = make_tree_params(q);
  require_finite(lambda, "lambda");
  if (distance_to_spectrum(q, lambda) <= 1e-9) {
    throw SpectrumError("lambda within 1e-9 of the spectrum [-rho, rho]");
  }
  const double rho = params.rho;
  // For admissible lambda the argument 1 - rho^2/lambda^2 never falls on the
  // branch cut: that would force lambda real with |lambda| < rho.
  const Complex s = lambda * principal_sqrt(1.0 - (rho * rho) / (lambda * lambda));
  const double c = (q + 1) / (2.0 * q);
  const Complex F = c * (lambda - s);
  const Complex Fc = c * (lambda + s);
  const Complex ratio = ((q - 1.0) / (q + 1.0)) * lambda;
  const Complex a = (s - ratio) / (2.0 * s);
  const Complex ac = (s + ratio) / (2.0 * s);
  for (Complex v : {s, F, Fc, a, ac}) require_finite(v, "spectral scalar");
  const SpectralRegime regime = (std::abs(lambda) > rho)
                                    ? SpectralRegime::OutsideDisk
                                    : SpectralRegime::ResolventOnly;
  return SpectralContext{params, lambda, s, F, Fc, a, ac, regime};
}

std::pair<Complex, Complex> quadratic_roots_oracle(int q, Complex lambda) {
  make_tree_params(q);
  require_finite(lambda, "lambda");
  if (distance_to_spectrum(q, lambda) <= 1e-9) {
    throw SpectrumError("lambda within 1e-9 of the spectrum [-rho, rho]");
  }
  const Complex b = -(q + 1.0) * lambda;
  const Complex disc = b * b - 4.0 * q;  // ((q+1) lambda)^2 - 4q
  if (std::abs(disc) < 1e-14) {
    throw DegenerateError("quadratic discriminant vanishes (lambda at +-rho)");
  }
  // For purely imaginary lambda the discriminant is a negative real, i.e. on
  // the branch cut; take the upper limit there.  Either sign only swaps the
  // pair, which the modulus ordering below resolves.
  Complex sqrt_disc;
  if (disc.imag() == 0.0 && disc.real() < 0.0) {
    sqrt_disc = Complex(0.0, std::sqrt(-disc.real()));
  } else {
    sqrt_disc = principal_sqrt(disc);
  }
  // Pick the sign that avoids cancellation, then recover the small root from
  // the product r1 r2 = 1/q.
  Complex sum = -b;  // (q+1) lambda
  if (sum.real() * sqrt_disc.real() + sum.imag() * sqrt_disc.imag() < 0.0) {
    sqrt_disc = -sqrt_disc;
  }
  const Complex big = (sum + sqrt_disc) / (2.0 * q);
  const Complex small = 1.0 / (static_cast<double>(q) * big);
  if (std::abs(small) <= std::abs(big)) return {small, big};
  return {big, small};
}

Complex F_pow(const SpectralContext& ctx, long long k) {
  const Complex base = (k >= 0) ? ctx.F : static_cast<double>(ctx.q()) * ctx.Fc;
  unsigned long long e = (k >= 0) ? static_cast<unsigned long long>(k)
                                  : static_cast<unsigned long long>(-k);
  if (e <= 64) {
    Complex acc(1.0, 0.0);
    Complex p = base;
    while (e > 0) {
      if (e & 1ull) acc *= p;
      e >>= 1;
      if (e) p *= p;
    }
    return acc;
  }
  const Complex v = F_pow_scaled(ctx, k).to_complex();
  require_finite(v, "F_pow result");
  return v;
}

ScaledComplex F_pow_scaled(const SpectralContext& ctx, long long k) {
  if (k >= 0) return pow_scaled(ctx.F, k);
  return pow_scaled(static_cast<double>(ctx.q()) * ctx.Fc, -k);
}

SpectralResiduals spectral_residuals(const SpectralContext& ctx) {
  const int q = ctx.q();
  const Complex lhs = ctx.lambda * ctx.F;
  const Complex rhs = 1.0 / (q + 1.0) + (static_cast<double>(q) / (q + 1.0)) * ctx.F * ctx.F;
  const Complex s2 = ctx.s * ctx.s;
  const Complex s2_expected = ctx.lambda * ctx.lambda - ctx.rho() * ctx.rho();
  const double inv_sqrt_q = 1.0 / std::sqrt(static_cast<double>(q));
  return SpectralResiduals{
      std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs)),
      std::abs(ctx.F * ctx.Fc - 1.0 / static_cast<double>(q)),
      std::abs(ctx.a + ctx.ac - 1.0),
      std::abs(s2 - s2_expected) / std::max(1e-300, std::abs(s2)),
      inv_sqrt_q - std::abs(ctx.F),
      std::abs(ctx.Fc) - inv_sqrt_q,
  };
}

}  // namespace polytree
