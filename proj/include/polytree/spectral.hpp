#pragma once

#include <utility>

#include "polytree/scalars.hpp"

namespace polytree {

struct TreeParams {
  int q;
  double rho;  // 2 sqrt(q) / (q+1)
};

TreeParams make_tree_params(int q);

/// Identities requiring |lambda| > rho (asymptotics, boundary limits) reject
/// resolvent-only contexts with RegimeError.
enum class SpectralRegime { OutsideDisk, ResolventOnly };

/// All spectral scalars of the simple random walk on T_q at eigenvalue
/// lambda: s = lambda sqrt(1 - rho^2/lambda^2), the two roots F and Fc of
/// q z^2 - (q+1) lambda z + 1 = 0, and the coefficients a, ac of the radial
/// solution a F^{|x|} + ac Fc^{|x|}.  Immutable after construction.
struct SpectralContext {
  TreeParams params;
  Complex lambda;
  Complex s;
  Complex F;
  Complex Fc;
  Complex a;
  Complex ac;
  SpectralRegime regime;

  int q() const { return params.q; }
  double rho() const { return params.rho; }
};

/// Euclidean distance from lambda to the real segment [-rho, rho].
double distance_to_spectrum(int q, Complex lambda);

/// Throws SpectrumError when lambda is within 1e-9 of [-rho, rho],
/// ParameterError for q < 2 or non-finite lambda.
SpectralContext make_context(int q, Complex lambda);

/// Independent root pair of q z^2 - (q+1) lambda z + 1 = 0, ordered by
/// modulus (smaller first).  Throws DegenerateError when the discriminant
/// vanishes (lambda at +-rho).
std::pair<Complex, Complex> quadratic_roots_oracle(int q, Complex lambda);

/// F(lambda)^k for any integer k (negative allowed, F^{-1} = q Fc).
/// Direct binary exponentiation for |k| <= 64, log-modulus beyond.
Complex F_pow(const SpectralContext& ctx, long long k);
ScaledComplex F_pow_scaled(const SpectralContext& ctx, long long k);

/// Residuals of the defining identities, emitted by the spectral CSV row.
struct SpectralResiduals {
  double quadratic;      // |lambda F - 1/(q+1) - q F^2/(q+1)| / |lambda F|
  double product;        // |F Fc - 1/q|
  double coefficient;    // |a + ac - 1|
  double s_squared;      // |s^2 - (lambda^2 - rho^2)| / |s^2|
  double margin_lower;   // 1/sqrt(q) - |F|
  double margin_upper;   // |Fc| - 1/sqrt(q)
};

SpectralResiduals spectral_residuals(const SpectralContext& ctx);

}  // namespace polytree
