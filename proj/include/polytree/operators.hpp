#pragma once

#include <functional>

#include "polytree/spectral.hpp"
#include "polytree/tree.hpp"

namespace polytree {

/// Vertices of B(center, radius) = { y : d(y, center) <= radius }, sorted
/// lexicographically.  Homogeneity makes the count independent of the
/// center: 1 + (q+1)(q^radius - 1)/(q-1).
std::vector<Vertex> ball_vertices(int q, const Vertex& center, int radius);

long long ball_vertex_count(int q, int radius);

/// Complex-valued function materialised on a ball: the domain of the
/// transition operator P.  Values are aligned with ball_vertices order and
/// immutable after construction.
class BallFunction {
 public:
  BallFunction(int q, Vertex center, int radius, std::vector<Complex> values);

  int q() const { return q_; }
  int radius() const { return radius_; }
  const Vertex& center() const { return center_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Complex>& values() const { return values_; }

  bool contains(const Vertex& x) const;
  Complex value_at(const Vertex& x) const;  // DomainError when absent

 private:
  int q_;
  Vertex center_;
  int radius_;
  std::vector<Vertex> vertices_;
  std::vector<Complex> values_;
};

using PointEvaluator = std::function<Complex(const Vertex&)>;

BallFunction sample_ball(int q, const PointEvaluator& evaluator, int radius);
BallFunction sample_ball(int q, const Vertex& center,
                         const PointEvaluator& evaluator, int radius);

/// Pf(x) = (1/(q+1)) sum_{y ~ x} f(y); the result lives on the ball of
/// radius shrunk by one.  DomainError at radius 0.
BallFunction apply_P(const BallFunction& f);

/// n-fold (lambda I - P); result radius shrinks by n.
BallFunction lambda_minus_P_power(const SpectralContext& ctx,
                                  const BallFunction& f, int n);

/// max over the shrunken ball of |((lambda I - P)^n f)(x)| normalised by
/// max(1, max_{d(y,center) <= d(x,center)+n} |f(y)|).  The functions in play
/// grow like |Fc|^{|x|}, so the local scale keeps the number meaningful.
double polyharmonic_residual(const SpectralContext& ctx, const BallFunction& f,
                             int n);

/// Average of f over spheres around `center`; the result is radial around
/// that center, defined on the largest ball around it contained in the
/// domain of f, with value f(center) at the center itself.
BallFunction spherical_average(const BallFunction& f, const Vertex& center);

// ---------------------------------------------------------------------------
// Tube-domain evaluation mode: identity checks along a ray (plus a fringe)
// reach depth a few hundred without materialising balls.  Evaluators are
// globally defined, so (lambda I - P)^n can be expanded pointwise.
// ---------------------------------------------------------------------------

std::vector<Vertex> tube_vertices(int q, const End& xi, int max_depth, int width);

using ScaledEvaluator = std::function<ScaledComplex(const Vertex&)>;

ScaledComplex apply_lambda_minus_P_pointwise(const SpectralContext& ctx,
                                             const ScaledEvaluator& f,
                                             const Vertex& x, int n);

}  // namespace polytree
