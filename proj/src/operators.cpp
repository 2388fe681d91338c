#include "polytree/operators.hpp"

#include <algorithm>
#include <cmath>

namespace polytree {

namespace {

void descend(int q, const Vertex& base, int budget, std::vector<Vertex>& out) {
  out.push_back(base);
  if (budget == 0) return;
  for (const Vertex& ch : children(q, base)) descend(q, ch, budget - 1, out);
}

}  // namespace

std::vector<Vertex> ball_vertices(int q, const Vertex& center, int radius) {
  if (q < 2) throw ParameterError("ball_vertices: q must be >= 2");
  if (radius < 0) throw ParameterError("ball_vertices: radius must be >= 0");
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(std::min<long long>(
      ball_vertex_count(q, radius), 1ll << 24)));
  // Subtree below the center, then walk up: at the ancestor k steps above,
  // take the ancestor itself plus the subtrees of its other children.
  descend(q, center, radius, out);
  Vertex below = center;
  for (int k = 1; k <= std::min(radius, center.depth()); ++k) {
    const Vertex anc = below.parent();
    const int towards = below.word.back();
    out.push_back(anc);
    if (radius - k - 1 >= 0) {
      for (const Vertex& ch : children(q, anc)) {
        if (ch.word.back() == towards) continue;
        descend(q, ch, radius - k - 1, out);
      }
    }
    below = anc;
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long ball_vertex_count(int q, int radius) {
  long long count = 1;
  long long sphere = q + 1;
  for (int r = 1; r <= radius; ++r) {
    count += sphere;
    sphere *= q;
  }
  return count;
}

BallFunction::BallFunction(int q, Vertex center, int radius,
                           std::vector<Complex> values)
    : q_(q), center_(std::move(center)), radius_(radius) {
  vertices_ = ball_vertices(q, center_, radius);
  if (values.size() != vertices_.size()) {
    throw ParameterError("BallFunction: value count does not match the ball");
  }
  values_ = std::move(values);
}

bool BallFunction::contains(const Vertex& x) const {
  return distance(x, center_) <= radius_;
}

Complex BallFunction::value_at(const Vertex& x) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
  if (it == vertices_.end() || !(*it == x)) {
    throw DomainError("vertex " + to_string(x) + " outside the ball domain");
  }
  return values_[static_cast<size_t>(it - vertices_.begin())];
}

BallFunction sample_ball(int q, const PointEvaluator& evaluator, int radius) {
  return sample_ball(q, Vertex::root(), evaluator, radius);
}

BallFunction sample_ball(int q, const Vertex& center,
                         const PointEvaluator& evaluator, int radius) {
  const std::vector<Vertex> verts = ball_vertices(q, center, radius);
  std::vector<Complex> values;
  values.reserve(verts.size());
  for (const Vertex& v : verts) values.push_back(evaluator(v));
  BallFunction f(q, center, radius, std::move(values));
  return f;
}

BallFunction apply_P(const BallFunction& f) {
  if (f.radius() < 1) {
    throw DomainError("apply_P: domain exhausted (radius 0)");
  }
  const int q = f.q();
  const std::vector<Vertex> verts = ball_vertices(q, f.center(), f.radius() - 1);
  std::vector<Complex> values;
  values.reserve(verts.size());
  for (const Vertex& x : verts) {
    Complex sum(0.0, 0.0);
    if (!x.is_root()) sum += f.value_at(x.parent());
    for (const Vertex& ch : children(q, x)) sum += f.value_at(ch);
    values.push_back(sum / (q + 1.0));
  }
  return BallFunction(q, f.center(), f.radius() - 1, std::move(values));
}

BallFunction lambda_minus_P_power(const SpectralContext& ctx,
                                  const BallFunction& f, int n) {
  if (n < 0) throw ParameterError("lambda_minus_P_power: n must be >= 0");
  if (f.radius() < n) {
    throw DomainError("lambda_minus_P_power: ball radius smaller than n");
  }
  BallFunction g = f;
  for (int i = 0; i < n; ++i) {
    BallFunction pg = apply_P(g);
    std::vector<Complex> values(pg.vertices().size());
    for (size_t j = 0; j < values.size(); ++j) {
      values[j] = ctx.lambda * g.value_at(pg.vertices()[j]) - pg.values()[j];
    }
    g = BallFunction(g.q(), g.center(), g.radius() - 1, std::move(values));
  }
  return g;
}

double polyharmonic_residual(const SpectralContext& ctx, const BallFunction& f,
                             int n) {
  const BallFunction g = lambda_minus_P_power(ctx, f, n);
  // cumulative max of |f| by distance from the center
  std::vector<double> scale(static_cast<size_t>(f.radius()) + 1, 0.0);
  for (size_t i = 0; i < f.vertices().size(); ++i) {
    const int d = distance(f.vertices()[i], f.center());
    scale[d] = std::max(scale[d], std::abs(f.values()[i]));
  }
  for (size_t d = 1; d < scale.size(); ++d) scale[d] = std::max(scale[d], scale[d - 1]);
  double worst = 0.0;
  for (size_t i = 0; i < g.vertices().size(); ++i) {
    const int d = distance(g.vertices()[i], f.center());
    const double local = scale[std::min<size_t>(d + n, scale.size() - 1)];
    worst = std::max(worst, std::abs(g.values()[i]) / std::max(1.0, local));
  }
  return worst;
}

BallFunction spherical_average(const BallFunction& f, const Vertex& center) {
  const int shift = distance(center, f.center());
  if (shift > f.radius()) {
    throw DomainError("spherical_average: center outside the ball");
  }
  const int out_radius = f.radius() - shift;
  std::vector<Complex> sums(static_cast<size_t>(out_radius) + 1, Complex(0, 0));
  std::vector<long long> counts(static_cast<size_t>(out_radius) + 1, 0);
  for (size_t i = 0; i < f.vertices().size(); ++i) {
    const int d = distance(f.vertices()[i], center);
    if (d <= out_radius) {
      sums[d] += f.values()[i];
      counts[d] += 1;
    }
  }
  const int q = f.q();
  long long expected = 1;
  for (int d = 0; d <= out_radius; ++d) {
    if (counts[d] != expected) {
      throw DomainError("spherical_average: incomplete sphere in the domain");
    }
    sums[d] /= static_cast<double>(counts[d]);
    expected = (d == 0) ? q + 1 : expected * q;
  }
  const std::vector<Vertex> verts = ball_vertices(q, center, out_radius);
  std::vector<Complex> values;
  values.reserve(verts.size());
  for (const Vertex& v : verts) values.push_back(sums[distance(v, center)]);
  return BallFunction(q, center, out_radius, std::move(values));
}

std::vector<Vertex> tube_vertices(int q, const End& xi, int max_depth, int width) {
  if (max_depth < 0 || width < 0) {
    throw ParameterError("tube_vertices: negative depth or width");
  }
  std::vector<Vertex> out;
  for (int k = 0; k <= max_depth; ++k) {
    const Vertex rk = ray_vertex(xi, k);
    out.push_back(rk);
    if (width == 0 || k == max_depth) continue;
    const int on_ray = xi.letter(k);
    const int levels = std::min(width - 1, max_depth - k - 1);
    for (const Vertex& ch : children(q, rk)) {
      if (ch.word.back() == on_ray) continue;
      descend(q, ch, levels, out);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScaledComplex apply_lambda_minus_P_pointwise(const SpectralContext& ctx,
                                             const ScaledEvaluator& f,
                                             const Vertex& x, int n) {
  if (n < 0) throw ParameterError("pointwise power: n must be >= 0");
  if (n == 0) return f(x);
  const ScaledEvaluator once = [&ctx, &f](const Vertex& y) {
    ScaledComplex sum = ScaledComplex::zero();
    if (!y.is_root()) sum = sum + f(y.parent());
    for (const Vertex& ch : children(ctx.q(), y)) sum = sum + f(ch);
    return ctx.lambda * f(y) - sum * (1.0 / (ctx.q() + 1.0));
  };
  if (n == 1) return once(x);
  return apply_lambda_minus_P_pointwise(
      ctx, [&once](const Vertex& y) { return once(y); }, x, n - 1);
}

}  // namespace polytree
