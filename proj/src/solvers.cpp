#include "polytree/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace polytree {

Evaluator::Evaluator(SpectralContext ctx, int order_index, Fn fn)
    : ctx_(std::move(ctx)), order_index_(order_index), fn_(std::move(fn)) {
  if (order_index_ < 0) throw ParameterError("order index must be >= 0");
  if (!fn_) throw ParameterError("Evaluator requires a function");
}

Evaluator poisson_transform(const SpectralContext& ctx, int n,
                            const LocallyConstantFunction& g) {
  const KernelSpec spec = make_kernel_spec(ctx, n);
  const auto terms = std::make_shared<std::vector<LocallyConstantFunction::Term>>(
      g.terms);
  return Evaluator(ctx, n, [spec, terms](const Vertex& x) {
    ScaledComplex sum = ScaledComplex::zero();
    for (const auto& t : *terms) {
      sum = sum + integrate_kernel_over_arc_scaled(spec, x, t.arc_root) *
                      t.coefficient;
    }
    return sum;
  });
}

Evaluator poisson_transform(const SpectralContext& ctx, int n,
                            const BoundaryDistribution& nu) {
  const KernelSpec spec = make_kernel_spec(ctx, n);
  const auto dist = std::make_shared<BoundaryDistribution>(nu);
  return Evaluator(ctx, n, [spec, dist](const Vertex& x) {
    ScaledComplex sum = ScaledComplex::zero();
    for (const auto& t : dist->density.terms) {
      sum = sum + integrate_kernel_over_arc_scaled(spec, x, t.arc_root) *
                      t.coefficient;
    }
    for (const auto& [xi, w] : dist->point_masses) {
      sum = sum + extended_kernel_scaled(spec, x, xi) * w;
    }
    return sum;
  });
}

Evaluator dirichlet_solve(const SpectralContext& ctx,
                          const LocallyConstantFunction& g) {
  return poisson_transform(ctx, 0, g);
}

RiquierSolution riquier_solve(const SpectralContext& ctx,
                              const std::vector<LocallyConstantFunction>& data) {
  if (data.empty()) throw ParameterError("riquier_solve: empty data list");
  if (data.size() > 8) throw ParameterError("riquier_solve: order above 8");
  std::vector<Evaluator> components;
  components.reserve(data.size());
  for (size_t k = 0; k < data.size(); ++k) {
    components.push_back(poisson_transform(ctx, static_cast<int>(k), data[k]));
  }
  const auto parts = std::make_shared<std::vector<Evaluator>>(components);
  Evaluator sum(ctx, static_cast<int>(data.size()) - 1,
                [parts](const Vertex& x) {
                  ScaledComplex acc = ScaledComplex::zero();
                  for (const Evaluator& f : *parts) acc = acc + f.scaled(x);
                  return acc;
                });
  return RiquierSolution{std::move(components), std::move(sum)};
}

ConvergenceReport convergence_probe(const Evaluator& numerator, int n,
                                    const SpectralContext& ctx, const End& xi,
                                    int a, std::vector<int> depths,
                                    Complex target) {
  if (ctx.regime != SpectralRegime::OutsideDisk) {
    throw RegimeError("convergence_probe requires |lambda| > rho");
  }
  const KernelSpec spec = make_kernel_spec(ctx, n);
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  ConvergenceReport report{xi, a, target, {}};
  const Cone cone(xi, a);
  for (int d : depths) {
    if (d < 0) throw ParameterError("convergence_probe: negative depth");
    const ScaledComplex denom = phi_n_scaled(spec, d);
    if (denom.is_zero()) {
      throw DomainError("Phi_n vanishes at probe depth " + std::to_string(d));
    }
    std::vector<Vertex> members;
    if (a == 0) {
      members.push_back(ray_vertex(xi, d));
    } else {
      members = cone_sample(ctx.q(), cone, d);
    }
    ConvergenceReport::Row worst{d, members.front(), Complex(0, 0), -1.0};
    for (const Vertex& x : members) {
      const Complex value = (numerator.scaled(x) / denom).to_complex();
      const double err = std::abs(value - target);
      if (err > worst.abs_error) {
        worst.vertex = x;
        worst.value = value;
        worst.abs_error = err;
      }
    }
    report.rows.push_back(std::move(worst));
  }
  return report;
}

double hl_maximal(int q, const LocallyConstantFunction& g, const End& xi) {
  const int res = g.resolution_depth();
  double sup = 0.0;
  for (int k = 0; k <= res; ++k) {
    const Vertex x = ray_vertex(xi, k);
    const double avg = integrate_abs_over_arc(q, g, x) /
                       to_double(arc_measure(q, x));
    sup = std::max(sup, avg);
  }
  return sup;
}

double frak_M_a(const SpectralContext& ctx, int n,
                const LocallyConstantFunction& g, const End& xi, int a,
                int max_depth) {
  if (ctx.regime != SpectralRegime::OutsideDisk) {
    throw RegimeError("frak_M_a requires |lambda| > rho");
  }
  const KernelSpec spec = make_kernel_spec(ctx, n);
  const int r_min = R_threshold(spec);
  if (max_depth < r_min) {
    throw ParameterError("frak_M_a: max_depth below the threshold radius");
  }
  const Evaluator f = poisson_transform(ctx, n, g);
  const Cone cone(xi, a);
  double sup = 0.0;
  for (int d = r_min; d <= max_depth; ++d) {
    const ScaledComplex denom = phi_n_scaled(spec, d);
    std::vector<Vertex> members;
    if (a == 0) {
      members.push_back(ray_vertex(xi, d));
    } else {
      members = cone_sample(ctx.q(), cone, d);
    }
    for (const Vertex& x : members) {
      const ScaledComplex ratio = f.scaled(x) / denom;
      sup = std::max(sup, ratio.abs_unchecked());
    }
  }
  return sup;
}

double C_a_constant(const SpectralContext& ctx, int n, int a) {
  if (n < 0 || a < 0) throw ParameterError("C_a_constant: n, a must be >= 0");
  const double q = ctx.q();
  const double contraction = std::abs(ctx.F / ctx.Fc);
  const double c0 = 2.0 * (q + 1.0) /
                    (q * std::abs(ctx.ac) * (1.0 - contraction));
  return std::pow(1.0 + 2.0 * a, n) * std::pow(std::abs(ctx.F), -2.0 * a) * c0;
}

}  // namespace polytree
