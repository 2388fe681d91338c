#include "polytree/suite.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "polytree/operators.hpp"
#include "polytree/oracle.hpp"
#include "polytree/solvers.hpp"
#include "polytree/spherical.hpp"

namespace polytree {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// A tiny failure collector: keeps the first few messages and a count.
struct Failures {
  int count = 0;
  std::string first;

  void add(const std::string& message) {
    if (count == 0) first = message;
    ++count;
  }
  bool empty() const { return count == 0; }
  std::string summary() const {
    if (empty()) return "";
    return std::to_string(count) + " failure(s); first: " + first;
  }
};

struct GridPoint {
  int q;
  Complex lambda;
};

std::string point_name(const GridPoint& p) {
  std::ostringstream os;
  os << "q=" << p.q << ",lambda=" << p.lambda.real();
  if (p.lambda.imag() != 0.0) os << (p.lambda.imag() > 0 ? "+" : "") << p.lambda.imag() << "i";
  return os.str();
}

std::vector<GridPoint> grid_points() {
  std::vector<GridPoint> grid;
  for (int q : {2, 3, 5}) {
    const double rho = make_tree_params(q).rho;
    for (double re : {rho + 0.055, rho + 0.2, 1.0, 1.3, 1.7, 2.0, 3.0, 5.0,
                      -1.1, -2.5}) {
      grid.push_back({q, Complex(re, 0.0)});
    }
    for (double im : {rho + 0.1, 1.6, -3.0, -(rho + 0.1)}) {
      grid.push_back({q, Complex(0.0, im)});
    }
    for (Complex z : {Complex(1.0, 1.0), Complex(-1.0, 0.7), Complex(2.0, -3.0),
                      Complex(-2.0, -2.0), Complex(0.5, 1.2), Complex(3.0, 0.4)}) {
      grid.push_back({q, z});
    }
  }
  return grid;
}

// strictly decreasing, with an escape once both neighbours are below the
// floor (double mantissas cannot resolve decay past ~1e-16 relative)
bool decreasing_with_floor(const std::vector<double>& vals, double floor_value) {
  for (size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] < vals[i - 1]) continue;
    if (vals[i] <= floor_value && vals[i - 1] <= floor_value) continue;
    return false;
  }
  return true;
}

// strictly decreasing log magnitudes; exact zeros count as converged
bool log_strictly_decreasing(const std::vector<ScaledComplex>& vals) {
  double prev = std::numeric_limits<double>::infinity();
  for (const ScaledComplex& v : vals) {
    if (v.is_zero()) continue;
    if (v.log_abs() >= prev) return false;
    prev = v.log_abs();
  }
  return true;
}

LocallyConstantFunction random_g(std::mt19937_64& rng, int q, int max_depth) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  LocallyConstantFunction g;
  const int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    Vertex arc;
    const int d = 1 + static_cast<int>(rng() % max_depth);
    for (int i = 0; i < d; ++i) {
      const int hi = (i == 0) ? q : q - 1;
      arc.word.push_back(static_cast<int>(rng() % (hi + 1)));
    }
    g.terms.push_back({std::move(arc), Complex(coeff(rng), coeff(rng))});
  }
  return g;
}

End random_end(std::mt19937_64& rng, int q) {
  Vertex prefix;
  const int d = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < d; ++i) {
    const int hi = (i == 0) ? q : q - 1;
    prefix.word.push_back(static_cast<int>(rng() % (hi + 1)));
  }
  std::vector<int> period;
  const int p = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < p; ++i) period.push_back(static_cast<int>(rng() % q));
  return End(std::move(prefix), std::move(period));
}

std::vector<int> depth_run(int from, int to, int step) {
  std::vector<int> out;
  for (int d = from; d <= to; d += step) out.push_back(d);
  return out;
}

// max over the tube of |(lambda I - P)^n f - target| normalised by the local
// magnitude of f (max |f| over the radius-n ball at each vertex)
double tube_identity_residual(const SpectralContext& ctx,
                              const ScaledEvaluator& f,
                              const ScaledEvaluator& target, int n,
                              const std::vector<Vertex>& tube) {
  double worst = 0.0;
  for (const Vertex& x : tube) {
    const ScaledComplex lhs = apply_lambda_minus_P_pointwise(ctx, f, x, n);
    const ScaledComplex diff = lhs - target(x);
    if (diff.is_zero()) continue;
    double local_log = 0.0;  // log(1)
    for (const Vertex& y : ball_vertices(ctx.q(), x, n)) {
      local_log = std::max(local_log, f(y).log_abs());
    }
    worst = std::max(worst, std::exp(diff.log_abs() - local_log));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Criterion 1: spectral identities on the grid.
// ---------------------------------------------------------------------------
CheckResult criterion_spectral() {
  const auto start = Clock::now();
  Failures fail;
  int points = 0;
  double worst = 0.0;
  for (const GridPoint& p : grid_points()) {
    const SpectralContext ctx = make_context(p.q, p.lambda);
    const SpectralResiduals res = spectral_residuals(ctx);
    worst = std::max({worst, res.quadratic, res.product});
    if (res.quadratic >= 1e-12) fail.add(point_name(p) + ": quadratic " + fmt(res.quadratic));
    if (res.product >= 1e-14) fail.add(point_name(p) + ": product " + fmt(res.product));
    if (res.margin_lower <= 1e-10 || res.margin_upper <= 1e-10) {
      fail.add(point_name(p) + ": inequality margin");
    }
    const auto [small, big] = quadratic_roots_oracle(p.q, p.lambda);
    if (std::abs(small - ctx.F) >= 1e-12 || std::abs(big - ctx.Fc) >= 1e-12) {
      fail.add(point_name(p) + ": oracle roots");
    }
    ++points;
  }
  const double secs = elapsed_seconds(start);
  if (points < 50) fail.add("grid too small: " + std::to_string(points));
  if (secs >= 1.0) fail.add("runtime " + fmt(secs) + " s >= 1 s");
  return {"C1 spectral identity suite",
          fail.empty(),
          fail.empty() ? std::to_string(points) + " grid points, worst residual " + fmt(worst)
                       : fail.summary(),
          secs};
}

// ---------------------------------------------------------------------------
// Criterion 2: spherical backends.
// ---------------------------------------------------------------------------
CheckResult criterion_spherical_backends() {
  const auto start = Clock::now();
  Failures fail;
  for (const GridPoint& p : grid_points()) {
    const SpectralContext ctx = make_context(p.q, p.lambda);
    const SphericalTable table = build_spherical_table(ctx, 60);
    for (int k = 0; k <= 60; ++k) {
      const Complex closed = phi_closed_form(ctx, k);
      if (std::abs(table.values[k] - closed) >
          1e-10 * std::max(1.0, std::abs(closed))) {
        fail.add(point_name(p) + ": backends differ at k=" + std::to_string(k));
        break;
      }
    }
  }
  for (int q : {2, 3, 5}) {
    const SpectralContext unit = make_context(q, Complex(1.0, 0.0));
    for (int k = 0; k <= 60; ++k) {
      if (std::abs(phi_recursion(unit, k) - 1.0) > 1e-13 ||
          std::abs(phi_closed_form(unit, k) - 1.0) > 1e-13) {
        fail.add("phi not 1 at lambda=1, q=" + std::to_string(q));
        break;
      }
    }
  }
  const double secs = elapsed_seconds(start);
  if (secs >= 1.0) fail.add("runtime " + fmt(secs) + " s >= 1 s");
  return {"C2 spherical backends", fail.empty(),
          fail.empty() ? "recursion vs closed form on the grid, k <= 60" : fail.summary(),
          secs};
}

// ---------------------------------------------------------------------------
// Criterion 3: harmonicity on balls, higher identities on tubes.
// ---------------------------------------------------------------------------
CheckResult criterion_harmonicity() {
  const auto start = Clock::now();
  Failures fail;
  double worst_ball = 0.0, worst_tube = 0.0;

  for (int q : {2, 3}) {
    const SpectralContext ctx = make_context(q, Complex(1.0, 1.0));
    const SphericalTable table = build_spherical_table(ctx, 12);
    const BallFunction ball = sample_ball(
        q, [&table](const Vertex& x) { return table.values[x.depth()]; }, 12);
    const double residual = polyharmonic_residual(ctx, ball, 1);
    worst_ball = std::max(worst_ball, residual);
    if (residual >= 1e-11) {
      fail.add("q=" + std::to_string(q) + ": (lambda I - P) Phi residual " + fmt(residual));
    }
  }

  for (int q : {2, 3}) {
    for (Complex lambda : {Complex(2.0, 0.0), Complex(1.0, 1.0)}) {
      const SpectralContext ctx = make_context(q, lambda);
      const End xi(Vertex{{0}}, {q - 1});
      const std::vector<Vertex> tube = tube_vertices(q, xi, 100, 1);
      for (int n = 1; n <= 4; ++n) {
        const KernelSpec spec = make_kernel_spec(ctx, n);
        const double r1 = tube_identity_residual(
            ctx, [&spec](const Vertex& x) { return phi_n_scaled(spec, x.depth()); },
            [&ctx](const Vertex& x) { return phi_scaled(ctx, x.depth()); }, n, tube);
        const double r2 = tube_identity_residual(
            ctx,
            [&spec, &xi](const Vertex& x) { return extended_kernel_scaled(spec, x, xi); },
            [&ctx, &xi](const Vertex& x) {
              return F_pow_scaled(ctx, horocycle(x, xi));
            },
            n, tube);
        worst_tube = std::max({worst_tube, r1, r2});
        if (r1 >= 1e-10) fail.add("polyspherical identity n=" + std::to_string(n));
        if (r2 >= 1e-10) fail.add("kernel identity n=" + std::to_string(n));
      }
    }
  }

  const double secs = elapsed_seconds(start);
  if (secs >= 30.0) fail.add("runtime " + fmt(secs) + " s >= 30 s");
  return {"C3 harmonicity and polyharmonicity", fail.empty(),
          fail.empty() ? "ball residual " + fmt(worst_ball) + ", tube residual " +
                             fmt(worst_tube) + " (depth 100, n <= 4)"
                       : fail.summary(),
          secs};
}

// ---------------------------------------------------------------------------
// Criterion 4: polyspherical backends cross-check.
// ---------------------------------------------------------------------------
CheckResult criterion_polyspherical_crosscheck() {
  const auto start = Clock::now();
  Failures fail;

  const std::vector<GridPoint> sample = {
      {2, Complex(2.0, 0.0)},  {2, Complex(1.0, 1.0)}, {3, Complex(2.0, 0.0)},
      {3, Complex(-1.2, 0.8)}, {5, Complex(0.0, 1.3)},
  };
  for (const GridPoint& p : sample) {
    const SpectralContext ctx = make_context(p.q, p.lambda);
    for (int n = 0; n <= 4; ++n) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      for (int radius : {1, 2, 3, 5, 8, 13, 21, 30}) {
        const Vertex x{std::vector<int>(radius, 0)};
        const Complex descent = integrate_kernel_over_arc(spec, x, Vertex::root());
        const Complex fast = phi_n_scaled(spec, radius).to_complex();
        if (std::abs(descent - fast) > 1e-11 * std::max(1.0, std::abs(descent))) {
          fail.add(point_name(p) + ": backends differ at n=" + std::to_string(n) +
                   ", |x|=" + std::to_string(radius));
        }
      }
      // sub-arc agreement at a generic vertex
      const Vertex x{{0, 1, 0, 1, 0, 1}};
      for (const Vertex& arc : {Vertex{{0}}, Vertex{{0, 1}}, Vertex{{1}}}) {
        const Complex descent = integrate_kernel_over_arc(spec, x, arc);
        const Complex fast = integrate_kernel_over_arc_scaled(spec, x, arc).to_complex();
        if (std::abs(descent - fast) > 1e-11 * std::max(1.0, std::abs(descent))) {
          fail.add(point_name(p) + ": arc backends differ, n=" + std::to_string(n));
        }
      }
    }
  }

  for (const GridPoint& p : grid_points()) {
    const SpectralContext ctx = make_context(p.q, p.lambda);
    for (int n = 1; n <= 4; ++n) {
      const KernelSpec spec = make_kernel_spec(ctx, n);
      if (std::abs(Phi_n(spec, Vertex::root())) > 1e-12) {
        fail.add(point_name(p) + ": Phi_n(o) != 0");
      }
    }
    const KernelSpec spec1 = make_kernel_spec(ctx, 1);
    if (std::abs(Phi_n(spec1, Vertex{{0}}) - Complex(-1.0, 0.0)) > 1e-12) {
      fail.add(point_name(p) + ": Phi_1 at |x|=1 is not -1");
    }
  }

  return {"C4 polyspherical cross-check", fail.empty(),
          fail.empty() ? "descent oracle vs finite-sum backend, |x| <= 30, n <= 4"
                       : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 5: asymptotics trends.
// ---------------------------------------------------------------------------
CheckResult criterion_asymptotics() {
  const auto start = Clock::now();
  Failures fail;
  const std::vector<int> radii = {50, 100, 200, 300};

  for (const GridPoint& p : grid_points()) {
    const SpectralContext ctx = make_context(p.q, p.lambda);
    for (int n = 0; n <= 3; ++n) {
      const KernelSpec spec = make_kernel_spec(ctx, n);

      std::vector<ScaledComplex> devs, tv_devs;
      for (int r : radii) {
        devs.push_back(asymptotic_deviation(spec, r));
        tv_devs.push_back(total_variation_deviation(spec, r));
      }
      if (!log_strictly_decreasing(devs)) {
        fail.add(point_name(p) + ": asymptotic deviation not decreasing, n=" +
                 std::to_string(n));
      }
      if (!log_strictly_decreasing(tv_devs)) {
        fail.add(point_name(p) + ": total-variation deviation not decreasing, n=" +
                 std::to_string(n));
      }
    }
    // Phi_k / Phi_n -> 0 for k < n
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}) {
      const KernelSpec spec_k = make_kernel_spec(ctx, k);
      const KernelSpec spec_n = make_kernel_spec(ctx, n);
      double prev = std::numeric_limits<double>::infinity();
      bool ok = true;
      for (int r : radii) {
        const double log_ratio = phi_n_scaled(spec_k, r).log_abs() -
                                 phi_n_scaled(spec_n, r).log_abs();
        if (log_ratio >= prev) ok = false;
        prev = log_ratio;
      }
      if (!ok || prev >= 0.0) {
        fail.add(point_name(p) + ": Phi_" + std::to_string(k) + "/Phi_" +
                 std::to_string(n) + " trend");
      }
    }
  }

  const double secs = elapsed_seconds(start);
  if (secs >= 10.0) fail.add("runtime " + fmt(secs) + " s >= 10 s");
  return {"C5 polyspherical asymptotics", fail.empty(),
          fail.empty() ? "deviation trends across |x| in {50,100,200,300} on the grid"
                       : fail.summary(),
          secs};
}

// ---------------------------------------------------------------------------
// Criterion 6: Dirichlet probe.
// ---------------------------------------------------------------------------
CheckResult criterion_dirichlet(std::uint64_t seed) {
  const auto start = Clock::now();
  Failures fail;
  std::mt19937_64 rng(seed ^ 0x6d696368656c5ull);

  const std::vector<GridPoint> points = {{2, Complex(2.0, 0.0)},
                                         {3, Complex(2.0, 0.0)}};
  for (int trial = 0; trial < 10; ++trial) {
    const GridPoint& p = points[trial % points.size()];
    const SpectralContext ctx = make_context(p.q, p.lambda);
    const LocallyConstantFunction g = random_g(rng, p.q, 4);
    const Evaluator h = dirichlet_solve(ctx, g);

    const Complex at_root = h(Vertex::root());
    const Complex integral = integrate_against_m(p.q, g);
    if (std::abs(at_root - integral) > 1e-13) {
      fail.add("h(o) != integral of g (trial " + std::to_string(trial) + ")");
    }

    const int r_min = R_threshold(make_kernel_spec(ctx, 0));
    const std::vector<int> depths = depth_run(r_min, r_min + 40, 5);
    for (int e = 0; e < 5; ++e) {
      const End xi = random_end(rng, p.q);
      const Complex target = evaluate_function(g, xi);
      const ConvergenceReport rep =
          convergence_probe(h, 0, ctx, xi, 0, depths, target);
      std::vector<double> errs;
      for (const auto& row : rep.rows) errs.push_back(row.abs_error);
      if (errs.back() >= 1e-6) {
        fail.add("error at depth R+40 is " + fmt(errs.back()));
      }
      if (!decreasing_with_floor(errs, 1e-12)) {
        fail.add("errors not decreasing (trial " + std::to_string(trial) + ")");
      }
    }
  }

  return {"C6 Dirichlet probe", fail.empty(),
          fail.empty() ? "10 random g x 5 ends, error < 1e-6 at depth R+40" : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 7: uniqueness surrogate via spherical averages.
// ---------------------------------------------------------------------------
CheckResult criterion_uniqueness(std::uint64_t seed) {
  const auto start = Clock::now();
  Failures fail;
  std::mt19937_64 rng(seed ^ 0x756e69717565ull);

  const int q = 2;
  const SpectralContext ctx = make_context(q, Complex(1.0, 1.0));

  // five lambda-harmonic test functions: three Martin kernels, two
  // Dirichlet solutions
  std::vector<PointEvaluator> harmonics;
  for (const char* text : {"0|1", "1|0", "2|0.1"}) {
    const End xi = parse_end(q, text);
    harmonics.push_back(
        [ctx, xi](const Vertex& x) { return martin_kernel(ctx, x, xi); });
  }
  for (int i = 0; i < 2; ++i) {
    const auto h = std::make_shared<Evaluator>(
        dirichlet_solve(ctx, random_g(rng, q, 3)));
    harmonics.push_back([h](const Vertex& x) { return (*h)(x); });
  }

  const std::vector<Vertex> centers = {Vertex::root(), Vertex{{0}},
                                       Vertex{{1, 1}}, Vertex{{2, 0, 1}},
                                       Vertex{{0, 1, 0, 1, 0}}};
  for (size_t hi = 0; hi < harmonics.size(); ++hi) {
    const BallFunction ball = sample_ball(q, harmonics[hi], 15);
    for (const Vertex& center : centers) {
      const BallFunction avg = spherical_average(ball, center);
      const Complex at_center = ball.value_at(center);
      double worst = 0.0;
      for (size_t i = 0; i < avg.vertices().size(); ++i) {
        const Vertex& y = avg.vertices()[i];
        if (distance(y, center) > 10) continue;
        const Complex expected = at_center * Phi_two_point(ctx, center, y);
        worst = std::max(worst, std::abs(avg.values()[i] - expected) /
                                    std::max(1.0, std::abs(expected)));
      }
      if (worst >= 1e-10) {
        fail.add("function " + std::to_string(hi) + ", center " + to_string(center) +
                 ": residual " + fmt(worst));
      }
    }
  }

  return {"C7 uniqueness surrogate", fail.empty(),
          fail.empty() ? "spherical-average identity, 5 centers x 5 harmonic functions"
                       : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 8: Riquier probe.
// ---------------------------------------------------------------------------
CheckResult criterion_riquier() {
  const auto start = Clock::now();
  Failures fail;

  const int q = 2;
  const SpectralContext ctx = make_context(q, Complex(2.0, 0.0));

  // distinct data with disjoint supports: the probe at an end inside
  // supp g_k sees the lower-order transforms decay geometrically
  std::vector<LocallyConstantFunction> data(3);
  data[0].terms.push_back({Vertex{{0}}, Complex(1.0, 0.0)});
  data[1].terms.push_back({Vertex{{1}}, Complex(2.0, -1.0)});
  data[2].terms.push_back({Vertex{{2}}, Complex(-0.5, 0.5)});
  const RiquierSolution sol = riquier_solve(ctx, data);

  // consistency (lambda I - P)^k f_k = h_{g_k} on tubes
  const End tube_end = parse_end(q, "0|1");
  const std::vector<Vertex> tube = tube_vertices(q, tube_end, 60, 1);
  for (int k = 0; k < 3; ++k) {
    const Evaluator& fk = sol.components[k];
    const Evaluator hk = dirichlet_solve(ctx, data[k]);
    double worst = 0.0;
    for (const Vertex& x : tube) {
      const ScaledComplex lhs = apply_lambda_minus_P_pointwise(
          ctx, [&fk](const Vertex& y) { return fk.scaled(y); }, x, k);
      const ScaledComplex diff = lhs - hk.scaled(x);
      if (diff.is_zero()) continue;
      double local = 0.0;
      for (const Vertex& y : ball_vertices(q, x, k)) {
        local = std::max(local, fk.scaled(y).log_abs());
      }
      worst = std::max(worst, std::exp(diff.log_abs() - local));
    }
    if (worst >= 1e-10) {
      fail.add("consistency residual " + fmt(worst) + " at k=" + std::to_string(k));
    }
  }

  // normalized limits (f_0 + ... + f_k)/Phi_k -> g_k at ends inside supp g_k
  int r_min = 1;
  for (int k = 0; k < 3; ++k) {
    r_min = std::max(r_min, R_threshold(make_kernel_spec(ctx, k)));
  }
  const std::vector<int> depths = depth_run(r_min, r_min + 40, 5);
  for (int k = 0; k < 3; ++k) {
    const End xi(Vertex{{k}}, {0});
    const Complex target = evaluate_function(data[k], xi);
    const auto partial = std::make_shared<std::vector<Evaluator>>(
        sol.components.begin(), sol.components.begin() + k + 1);
    const Evaluator partial_sum(ctx, k, [partial](const Vertex& x) {
      ScaledComplex acc = ScaledComplex::zero();
      for (const Evaluator& f : *partial) acc = acc + f.scaled(x);
      return acc;
    });
    const ConvergenceReport rep =
        convergence_probe(partial_sum, k, ctx, xi, 0, depths, target);
    if (rep.rows.back().abs_error >= 1e-5) {
      fail.add("probe error " + fmt(rep.rows.back().abs_error) + " at k=" +
               std::to_string(k));
    }
  }

  return {"C8 Riquier probe", fail.empty(),
          fail.empty() ? "order 3, consistency on tubes and normalized limits" : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 9: Fatou point-mass decay.
// ---------------------------------------------------------------------------
CheckResult criterion_fatou() {
  const auto start = Clock::now();
  Failures fail;

  for (int q : {2, 3}) {
    for (Complex lambda : {Complex(2.0, 0.0), Complex(1.0, 1.0)}) {
      const SpectralContext ctx = make_context(q, lambda);
      const End xi0(Vertex{{0}}, {0});
      const End probe_end(Vertex{{1}}, {0});
      const BoundaryDistribution nu =
          BoundaryDistribution::point_mass(xi0, Complex(1.0, 0.0));
      for (int n : {0, 1}) {
        const Evaluator f = poisson_transform(ctx, n, nu);
        const int r_min = R_threshold(make_kernel_spec(ctx, n));
        for (int a : {0, 1, 2}) {
          const std::vector<int> depths =
              depth_run(std::max(r_min, a + 1), r_min + 40, 4);
          const ConvergenceReport rep =
              convergence_probe(f, n, ctx, probe_end, a, depths, Complex(0, 0));
          std::vector<double> mags;
          for (const auto& row : rep.rows) mags.push_back(row.abs_error);
          if (mags.back() >= 1e-6) {
            fail.add("q=" + std::to_string(q) + ", a=" + std::to_string(a) +
                     ": magnitude " + fmt(mags.back()) + " at depth R+40");
          }
          if (!decreasing_with_floor(mags, 0.0)) {
            fail.add("q=" + std::to_string(q) + ", a=" + std::to_string(a) +
                     ": not strictly decreasing");
          }
        }
      }
    }
  }

  return {"C9 Fatou point-mass decay", fail.empty(),
          fail.empty() ? "delta transforms vanish along foreign cones, a in {0,1,2}"
                       : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 10: maximal inequality.
// ---------------------------------------------------------------------------
CheckResult criterion_maximal(std::uint64_t seed) {
  const auto start = Clock::now();
  Failures fail;
  std::mt19937_64 rng(seed ^ 0x6d6178696d616cull);

  const std::vector<GridPoint> points = {{2, Complex(2.0, 0.0)},
                                         {3, Complex(1.0, 1.0)}};
  int violations = 0;
  int samples = 0;
  for (int gi = 0; gi < 20; ++gi) {
    const GridPoint& p = points[gi % points.size()];
    const SpectralContext ctx = make_context(p.q, p.lambda);
    const int n = gi % 3;
    const LocallyConstantFunction g = random_g(rng, p.q, 3);
    const int r_min = R_threshold(make_kernel_spec(ctx, n));
    for (int e = 0; e < 30; ++e) {
      const End xi = random_end(rng, p.q);
      const double mg = hl_maximal(p.q, g, xi);
      for (int a : {0, 1, 2}) {
        const double lhs = frak_M_a(ctx, n, g, xi, a, r_min + 25);
        const double rhs = C_a_constant(ctx, n, a) * mg;
        ++samples;
        if (lhs > rhs) {
          ++violations;
          if (violations == 1) {
            fail.add("violation: frakM=" + fmt(lhs) + " > C_a Mg=" + fmt(rhs));
          }
        }
      }
    }
  }
  if (violations > 0) {
    fail.add(std::to_string(violations) + " violations out of " +
             std::to_string(samples));
  }

  return {"C10 maximal inequality", fail.empty(),
          fail.empty() ? std::to_string(samples) + " samples, zero violations"
                       : fail.summary(),
          elapsed_seconds(start)};
}

// ---------------------------------------------------------------------------
// Criterion 11: first-passage oracle agreement.
// ---------------------------------------------------------------------------
CheckResult criterion_oracle() {
  const auto start = Clock::now();
  Failures fail;

  for (int q : {2, 3}) {
    const FirstPassageTable table = first_passage_table(q, 4, 2000);
    for (double lambda : {1.5, 2.0}) {
      const SpectralContext ctx = make_context(q, Complex(lambda, 0.0));
      const SeriesResult r = truncated_series(table, 1, Complex(lambda, 0.0));
      if (std::abs(r.value - ctx.F) >= 1e-8) {
        fail.add("series vs F at q=" + std::to_string(q) + ", lambda=" + fmt(lambda));
      }
      for (int d = 2; d <= 4; ++d) {
        const SeriesResult rd = truncated_series(table, d, Complex(lambda, 0.0));
        Complex power(1.0, 0.0);
        for (int i = 0; i < d; ++i) power *= r.value;
        const double rounding = 16.0 * d * 2.3e-16 * std::max(1.0, std::abs(power));
        if (std::abs(rd.value - power) >
            2.0 * (rd.tail_bound + r.tail_bound) + rounding) {
          fail.add("multiplicativity at d=" + std::to_string(d));
        }
      }
    }
  }

  return {"C11 oracle agreement", fail.empty(),
          fail.empty() ? "N=2000 series matches F to 1e-8; F^d multiplicativity" : fail.summary(),
          elapsed_seconds(start)};
}

}  // namespace

std::vector<std::pair<int, Complex>> acceptance_grid() {
  std::vector<std::pair<int, Complex>> out;
  for (const GridPoint& p : grid_points()) out.emplace_back(p.q, p.lambda);
  return out;
}

std::vector<CheckResult> run_acceptance_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  results.push_back(criterion_spectral());
  results.push_back(criterion_spherical_backends());
  results.push_back(criterion_harmonicity());
  results.push_back(criterion_polyspherical_crosscheck());
  results.push_back(criterion_asymptotics());
  results.push_back(criterion_dirichlet(seed));
  results.push_back(criterion_uniqueness(seed));
  results.push_back(criterion_riquier());
  results.push_back(criterion_fatou());
  results.push_back(criterion_maximal(seed));
  results.push_back(criterion_oracle());
  return results;
}

int run_suite(std::ostream& out, std::uint64_t seed) {
  const auto start = Clock::now();
  const std::vector<CheckResult> results = run_acceptance_suite(seed);
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
        << " (" << fmt(r.seconds) << " s)\n";
    all = all && r.passed;
  }
  const double total = elapsed_seconds(start);
  if (total >= 300.0) {
    out << "[FAIL] total runtime " << fmt(total) << " s >= 300 s\n";
    all = false;
  } else {
    out << "total runtime " << fmt(total) << " s\n";
  }
  return all ? 0 : 1;
}

}  // namespace polytree
