#include "polytree/spherical.hpp"

#include <algorithm>
#include <cmath>

namespace polytree {

KernelSpec make_kernel_spec(SpectralContext ctx, int n) {
  if (n < 0 || n > 8) {
    throw ParameterError("kernel order index n must be in [0, 8]");
  }
  return KernelSpec{std::move(ctx), n};
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

double ipow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

Complex ipow(Complex base, int e) {
  Complex acc(1.0, 0.0);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

/// hor^n / (n! s^n), with the 0^0 = 1 convention for n = 0.
Complex hor_power_factor(int n, int hor, Complex s) {
  if (n == 0) return Complex(1.0, 0.0);
  return ipow(Complex(static_cast<double>(hor), 0.0), n) /
         (factorial(n) * ipow(s, n));
}

void require_outside_disk(const SpectralContext& ctx, const char* what) {
  if (ctx.regime != SpectralRegime::OutsideDisk) {
    throw RegimeError(std::string(what) + " requires |lambda| > rho");
  }
}

ScaledComplex scaled_arc_measure(int q, const Vertex& v) {
  if (v.is_root()) return ScaledComplex::one();
  const double log_m =
      -std::log(q + 1.0) - (v.depth() - 1) * std::log(static_cast<double>(q));
  return ScaledComplex::from_log(log_m, 0.0);
}

}  // namespace

SphericalTable build_spherical_table(const SpectralContext& ctx, int max_radius) {
  if (max_radius < 0) throw ParameterError("max_radius must be >= 0");
  SphericalTable table{ctx, {}};
  table.values.resize(max_radius + 1);
  table.values[0] = Complex(1.0, 0.0);
  if (max_radius >= 1) table.values[1] = ctx.lambda;
  const double q = ctx.q();
  for (int k = 1; k < max_radius; ++k) {
    table.values[k + 1] =
        ((q + 1.0) * ctx.lambda * table.values[k] - table.values[k - 1]) / q;
  }
  return table;
}

Complex phi_recursion(const SpectralContext& ctx, int k) {
  if (k < 0) throw ParameterError("phi: radius must be >= 0");
  return build_spherical_table(ctx, k).values[k];
}

Complex phi_closed_form(const SpectralContext& ctx, int k) {
  if (k < 0) throw ParameterError("phi: radius must be >= 0");
  if (k == 0) return Complex(1.0, 0.0);
  return ctx.a * ipow(ctx.F, k) + ctx.ac * ipow(ctx.Fc, k);
}

Complex phi(const SpectralContext& ctx, int k) { return phi_closed_form(ctx, k); }

ScaledComplex phi_scaled(const SpectralContext& ctx, int k) {
  if (k < 0) throw ParameterError("phi: radius must be >= 0");
  if (k == 0) return ScaledComplex::one();
  return ctx.a * pow_scaled(ctx.F, k) + ctx.ac * pow_scaled(ctx.Fc, k);
}

Complex Phi(const SpectralContext& ctx, const Vertex& x) {
  return phi(ctx, x.depth());
}

Complex Phi_two_point(const SpectralContext& ctx, const Vertex& x,
                      const Vertex& y) {
  return phi(ctx, distance(x, y));
}

Complex martin_kernel(const SpectralContext& ctx, const Vertex& x, const End& xi) {
  return F_pow(ctx, horocycle(x, xi));
}

Complex hor_factor(const KernelSpec& spec, const Vertex& x, const End& xi) {
  return hor_power_factor(spec.n, horocycle(x, xi), spec.ctx.s);
}

Complex extended_kernel(const KernelSpec& spec, const Vertex& x, const End& xi) {
  return martin_kernel(spec.ctx, x, xi) * hor_factor(spec, x, xi);
}

ScaledComplex extended_kernel_scaled(const KernelSpec& spec, const Vertex& x,
                                     const End& xi) {
  const int hor = horocycle(x, xi);
  return F_pow_scaled(spec.ctx, hor) *
         hor_power_factor(spec.n, hor, spec.ctx.s);
}

Complex integrate_kernel_over_arc(const KernelSpec& spec, const Vertex& x,
                                  const Vertex& v) {
  const int q = spec.ctx.q();
  if (is_prefix(v, x) && !(v == x)) {
    Complex total(0.0, 0.0);
    for (const Vertex& ch : children(q, v)) {
      total += integrate_kernel_over_arc(spec, x, ch);
    }
    return total;
  }
  // x ^ xi is constant (= x ^ v) for xi in dT_v.
  const Vertex conf = confluent(x, v);
  const int hor = x.depth() - 2 * conf.depth();
  return to_double(arc_measure(q, v)) * F_pow(spec.ctx, hor) *
         hor_power_factor(spec.n, hor, spec.ctx.s);
}

namespace {

// Shared machinery for the A_l finite sums.  With m = |x|, w = 1/(q Fc^2)
// and tau_k = ((m-2k)/m)^n:
//
//   n! s^n Phi_n(x) = (q/(q+1)) (-m)^n Fc^m B(m),
//   B(m) = 1 + ((q-1)/q) sum_{k=1}^{m-1} w^k tau_k + (-1)^n w^m,
//
// and the integral over dT_v for v a proper prefix of x (p = |v| > 0) is the
// same expression with the sum truncated at k = m-p and no w^m term.

struct SumParams {
  int q;
  Complex w;
  double c;  // (q-1)/q
  Complex s;
  int n;
};

SumParams sum_params(const KernelSpec& spec) {
  const int q = spec.ctx.q();
  const Complex w = 1.0 / (static_cast<double>(q) * spec.ctx.Fc * spec.ctx.Fc);
  return SumParams{q, w, (q - 1.0) / q, spec.ctx.s, spec.n};
}

/// sum_{k=1}^{kmax} w^k tau_k as a plain complex (terms are bounded by
/// |w|^k < 1; underflow of deep terms is harmless).
Complex partial_tau_sum(const SumParams& p, int m, int kmax) {
  Complex sum(0.0, 0.0);
  Complex wk(1.0, 0.0);
  for (int k = 1; k <= kmax; ++k) {
    wk *= p.w;
    const double ratio = static_cast<double>(m - 2 * k) / m;
    sum += wk * ipow(ratio, p.n);
  }
  return sum;
}

/// Same with |w| and |m-2k|^n/m^n.
double partial_tau_sum_abs(const SumParams& p, int m, int kmax) {
  double sum = 0.0;
  double wk = 1.0;
  const double wabs = std::abs(p.w);
  for (int k = 1; k <= kmax; ++k) {
    wk *= wabs;
    const double ratio = std::abs(static_cast<double>(m - 2 * k)) / m;
    sum += wk * ipow(ratio, p.n);
  }
  return sum;
}

ScaledComplex b_sum_full(const SumParams& p, int m) {
  const Complex head = Complex(1.0, 0.0) + p.c * partial_tau_sum(p, m, m - 1);
  const double sign = (p.n % 2 == 0) ? 1.0 : -1.0;
  return ScaledComplex::from(head) + pow_scaled(p.w, m) * sign;
}

ScaledComplex b_sum_abs(const SumParams& p, int m) {
  const double head = 1.0 + p.c * partial_tau_sum_abs(p, m, m - 1);
  return ScaledComplex::from(Complex(head, 0.0)) +
         pow_scaled(Complex(std::abs(p.w), 0.0), m);
}

/// (q/(q+1)) (-m)^n / (n! s^n).
Complex leading_coefficient(const SumParams& p, int m) {
  return (p.q / (p.q + 1.0)) *
         ipow(Complex(static_cast<double>(-m), 0.0), p.n) /
         (factorial(p.n) * ipow(p.s, p.n));
}

Complex b_limit(const SumParams& p) {
  return Complex(1.0, 0.0) + p.c * p.w / (1.0 - p.w);
}

double b_limit_abs(const SumParams& p) {
  const double wabs = std::abs(p.w);
  return 1.0 + p.c * wabs / (1.0 - wabs);
}

/// Delta(m) = B(m) - B_lim, accumulated without forming the near-unit values
/// themselves: tau_k - 1 term by term, plus the scaled geometric tail.
ScaledComplex b_sum_deviation(const SumParams& p, int m) {
  Complex head(0.0, 0.0);
  if (p.n > 0) {
    Complex wk(1.0, 0.0);
    for (int k = 1; k <= m - 1; ++k) {
      wk *= p.w;
      const double ratio = static_cast<double>(m - 2 * k) / m;
      head += wk * (ipow(ratio, p.n) - 1.0);
    }
    head *= p.c;
  }
  const double sign = (p.n % 2 == 0) ? 1.0 : -1.0;
  const Complex tail_coeff = Complex(sign, 0.0) - p.c / (1.0 - p.w);
  return ScaledComplex::from(head) + pow_scaled(p.w, m) * tail_coeff;
}

/// Delta_abs(m) = B_abs(m) - B_abs_lim, same structure on absolute values.
ScaledComplex b_sum_abs_deviation(const SumParams& p, int m) {
  const double wabs = std::abs(p.w);
  double head = 0.0;
  if (p.n > 0) {
    double wk = 1.0;
    for (int k = 1; k <= m - 1; ++k) {
      wk *= wabs;
      const double ratio = std::abs(static_cast<double>(m - 2 * k)) / m;
      head += wk * (ipow(ratio, p.n) - 1.0);
    }
    head *= p.c;
  }
  const double tail_coeff = 1.0 - p.c / (1.0 - wabs);
  return ScaledComplex::from(Complex(head, 0.0)) +
         pow_scaled(Complex(wabs, 0.0), m) * tail_coeff;
}

}  // namespace

ScaledComplex integrate_kernel_over_arc_scaled(const KernelSpec& spec,
                                               const Vertex& x, const Vertex& v) {
  const SumParams p = sum_params(spec);
  const int m = x.depth();
  if (is_prefix(v, x) && v.depth() < m) {
    const int depth = v.depth();
    ScaledComplex b = v.is_root()
                          ? b_sum_full(p, m)
                          : ScaledComplex::from(Complex(1.0, 0.0) +
                                                p.c * partial_tau_sum(p, m, m - depth));
    return leading_coefficient(p, m) * pow_scaled(spec.ctx.Fc, m) * b;
  }
  const Vertex conf = confluent(x, v);
  const int hor = m - 2 * conf.depth();
  return scaled_arc_measure(p.q, v) * F_pow_scaled(spec.ctx, hor) *
         hor_power_factor(spec.n, hor, spec.ctx.s);
}

ScaledComplex phi_n_scaled(const KernelSpec& spec, int radius) {
  if (radius < 0) throw ParameterError("phi_n: radius must be >= 0");
  if (radius == 0) {
    return (spec.n == 0) ? ScaledComplex::one() : ScaledComplex::zero();
  }
  const SumParams p = sum_params(spec);
  return leading_coefficient(p, radius) * pow_scaled(spec.ctx.Fc, radius) *
         b_sum_full(p, radius);
}

Complex Phi_n(const KernelSpec& spec, const Vertex& x) {
  return phi_n_scaled(spec, x.depth()).to_complex();
}

ScaledComplex phi_abs_n_scaled(const KernelSpec& spec, int radius) {
  if (radius < 0) throw ParameterError("phi_abs_n: radius must be >= 0");
  if (radius == 0) {
    return (spec.n == 0) ? ScaledComplex::one() : ScaledComplex::zero();
  }
  const SumParams p = sum_params(spec);
  const double coeff = (p.q / (p.q + 1.0)) * ipow(static_cast<double>(radius), p.n) /
                       (factorial(p.n) * ipow(std::abs(p.s), p.n));
  return ScaledComplex::from(Complex(coeff, 0.0)) *
         pow_scaled(Complex(std::abs(spec.ctx.Fc), 0.0), radius) *
         b_sum_abs(p, radius);
}

double Phi_abs_n(const KernelSpec& spec, const Vertex& x) {
  const Complex v = phi_abs_n_scaled(spec, x.depth()).to_complex();
  return v.real();
}

ScaledComplex asymptotic_phi_n_scaled(const KernelSpec& spec, int radius) {
  require_outside_disk(spec.ctx, "asymptotic_Phi_n");
  if (radius < 1) throw ParameterError("asymptotic_Phi_n: radius must be >= 1");
  const double sign = (spec.n % 2 == 0) ? 1.0 : -1.0;
  const Complex coeff = spec.ctx.ac * sign *
                        ipow(static_cast<double>(radius), spec.n) /
                        (factorial(spec.n) * ipow(spec.ctx.s, spec.n));
  return ScaledComplex::from(coeff) * pow_scaled(spec.ctx.Fc, radius);
}

Complex asymptotic_Phi_n(const KernelSpec& spec, int radius) {
  return asymptotic_phi_n_scaled(spec, radius).to_complex();
}

ScaledComplex asymptotic_deviation(const KernelSpec& spec, int radius) {
  require_outside_disk(spec.ctx, "asymptotic_deviation");
  if (radius < 1) throw ParameterError("asymptotic_deviation: radius must be >= 1");
  const SumParams p = sum_params(spec);
  // Phi_n/asym = q B / ((q+1) ac) and q B_lim = (q+1) ac exactly, so the
  // deviation reduces to q |B - B_lim| / ((q+1) |ac|).
  const ScaledComplex delta = b_sum_deviation(p, radius);
  const double factor = p.q / ((p.q + 1.0) * std::abs(spec.ctx.ac));
  return abs_scaled(delta) * factor;
}

ScaledComplex total_variation_deviation(const KernelSpec& spec, int radius) {
  require_outside_disk(spec.ctx, "total_variation_deviation");
  if (radius < 1) {
    throw ParameterError("total_variation_deviation: radius must be >= 1");
  }
  const SumParams p = sum_params(spec);
  // |Phi|_n/|Phi_n| = B_abs/|B| and C/|ac| = B_abs_lim/|B_lim|; expand the
  // difference so that only the deviations Delta, Delta_abs enter.
  const Complex blim = b_limit(p);
  const double blim_abs_val = std::abs(blim);
  const double babs_lim = b_limit_abs(p);
  const ScaledComplex delta = b_sum_deviation(p, radius);
  const ScaledComplex delta_abs = b_sum_abs_deviation(p, radius);
  const Complex b_val = (ScaledComplex::from(blim) + delta).to_complex();
  const double b_mod = std::abs(b_val);
  // |B| - |B_lim| = (2 Re(conj(B_lim) Delta) + |Delta|^2) / (|B| + |B_lim|)
  const ScaledComplex cross = delta * std::conj(blim);
  const ScaledComplex re_cross{Complex(cross.mantissa.real(), 0.0), cross.log_scale};
  const ScaledComplex mod_diff =
      (re_cross * 2.0 + abs_scaled(delta) * abs_scaled(delta)) *
      (1.0 / (b_mod + blim_abs_val));
  const ScaledComplex numerator =
      delta_abs * blim_abs_val - mod_diff * babs_lim;
  return abs_scaled(numerator * (1.0 / (b_mod * blim_abs_val)));
}

double C_lambda(const SpectralContext& ctx) {
  const double q = ctx.q();
  const double fc2 = std::norm(ctx.Fc);
  return (1.0 / (q + 1.0)) * (q * q * fc2 - 1.0) / (q * fc2 - 1.0);
}

int R_threshold(const KernelSpec& spec) {
  require_outside_disk(spec.ctx, "R_threshold");
  constexpr int kMaxR = 200;
  constexpr int kWindow = 20;
  std::vector<bool> ok(kMaxR + kWindow + 1, false);
  for (int x = 1; x <= kMaxR + kWindow; ++x) {
    const bool nonzero = !phi_n_scaled(spec, x).is_zero();
    const bool close = asymptotic_deviation(spec, x).log_abs() < 0.0;
    ok[x] = nonzero && close;
  }
  for (int r = 1; r <= kMaxR; ++r) {
    bool all = true;
    for (int x = r; x <= r + kWindow; ++x) {
      if (!ok[x]) {
        all = false;
        break;
      }
    }
    if (all) return r;
  }
  throw ThresholdError("no asymptotic threshold radius found below 200");
}

}  // namespace polytree
