#pragma once

#include <functional>
#include <memory>

#include "polytree/boundary.hpp"
#include "polytree/spherical.hpp"

namespace polytree {

/// Immutable x -> complex map produced by the solvers; values are carried in
/// the scaled representation so deep-vertex evaluation never overflows.
class Evaluator {
 public:
  using Fn = std::function<ScaledComplex(const Vertex&)>;

  Evaluator(SpectralContext ctx, int order_index, Fn fn);

  ScaledComplex scaled(const Vertex& x) const { return fn_(x); }
  Complex operator()(const Vertex& x) const { return fn_(x).to_complex(); }

  const SpectralContext& context() const { return ctx_; }
  int order_index() const { return order_index_; }

 private:
  SpectralContext ctx_;
  int order_index_;
  Fn fn_;
};

/// f(x) = integral of K(x,.) hor_n(x,.) against g dm (locally constant g) or
/// against the distribution nu.  lambda-polyharmonic of order n+1.
Evaluator poisson_transform(const SpectralContext& ctx, int n,
                            const LocallyConstantFunction& g);
Evaluator poisson_transform(const SpectralContext& ctx, int n,
                            const BoundaryDistribution& nu);

/// Solution of the lambda-Dirichlet problem at infinity (order index 0).
Evaluator dirichlet_solve(const SpectralContext& ctx,
                          const LocallyConstantFunction& g);

struct RiquierSolution {
  std::vector<Evaluator> components;  // f_k, k = 0 .. n-1
  Evaluator sum;                      // f = f_0 + ... + f_{n-1}
};

/// f_k = poisson_transform(ctx, k, g_k); 1 <= #data <= 8.
RiquierSolution riquier_solve(const SpectralContext& ctx,
                              const std::vector<LocallyConstantFunction>& data);

struct ConvergenceReport {
  struct Row {
    int depth;
    Vertex vertex;       // worst cone member at this depth
    Complex value;       // numerator(x) / Phi_n(x)
    double abs_error;    // |value - target|
  };
  End end;
  int width;             // cone width a
  Complex target;
  std::vector<Row> rows; // sorted by strictly increasing depth
};

/// Normalised boundary-convergence probe along Gamma_a(xi): at each depth,
/// evaluates numerator/Phi_n on the cone members of that word length and
/// reports the worst error.  RegimeError when |lambda| <= rho.
ConvergenceReport convergence_probe(const Evaluator& numerator, int n,
                                    const SpectralContext& ctx, const End& xi,
                                    int a, std::vector<int> depths,
                                    Complex target);

/// Hardy-Littlewood maximal function of |g| at xi: sup over ray vertices of
/// the arc averages.  Beyond g's resolution depth the average is constant,
/// so the supremum is over a finite set.
double hl_maximal(int q, const LocallyConstantFunction& g, const End& xi);

/// Sampled sup over cone members with R_threshold <= |x| <= max_depth of
/// |poisson_transform(g)(x) / Phi_n(x)|.
double frak_M_a(const SpectralContext& ctx, int n,
                const LocallyConstantFunction& g, const End& xi, int a,
                int max_depth);

/// C_a = (1+2a)^n |F|^{-2a} C_0 with
/// C_0 = 2(q+1) / (q |ac| (1 - |F/Fc|)).
double C_a_constant(const SpectralContext& ctx, int n, int a);

}  // namespace polytree
