#pragma once

#include "polytree/boundary.hpp"
#include "polytree/spectral.hpp"
#include "polytree/tree.hpp"

namespace polytree {

/// Spectral context plus the polyharmonic order index n of the kernel
/// extension K(x,xi) hor(x,xi)^n / (n! s^n).
struct KernelSpec {
  SpectralContext ctx;
  int n;
};

/// n in [0, 8]: factorials stay exact in double and every experiment in the
/// suite lives in that range.
KernelSpec make_kernel_spec(SpectralContext ctx, int n);

double factorial(int n);

// ---------------------------------------------------------------------------
// Spherical function Phi(.|lambda): the unique radial lambda-harmonic
// function with value 1 at the root.  Two independent backends: the
// three-term recursion and the closed form a F^k + ac Fc^k.
// ---------------------------------------------------------------------------

struct SphericalTable {
  SpectralContext ctx;
  std::vector<Complex> values;  // phi_0 .. phi_K
};

SphericalTable build_spherical_table(const SpectralContext& ctx, int max_radius);

Complex phi_recursion(const SpectralContext& ctx, int k);
Complex phi_closed_form(const SpectralContext& ctx, int k);

/// Primary backend (closed form).
Complex phi(const SpectralContext& ctx, int k);
ScaledComplex phi_scaled(const SpectralContext& ctx, int k);

Complex Phi(const SpectralContext& ctx, const Vertex& x);

/// Phi(x,y|lambda) = phi_{d(x,y)}: radial around x, value 1 at x.
Complex Phi_two_point(const SpectralContext& ctx, const Vertex& x,
                      const Vertex& y);

// ---------------------------------------------------------------------------
// Martin kernel K(x,xi|lambda) = F^{hor(x,xi)} and its order-n extension.
// ---------------------------------------------------------------------------

Complex martin_kernel(const SpectralContext& ctx, const Vertex& x, const End& xi);

/// hor(x,xi)^n / (n! s^n);  identically 1 for n = 0.
Complex hor_factor(const KernelSpec& spec, const Vertex& x, const End& xi);

Complex extended_kernel(const KernelSpec& spec, const Vertex& x, const End& xi);
ScaledComplex extended_kernel_scaled(const KernelSpec& spec, const Vertex& x,
                                     const End& xi);

// ---------------------------------------------------------------------------
// Exact boundary integrals of the extended kernel over arcs.
//
// integrate_kernel_over_arc descends the arc tree: off the path to x the
// integrand is constant on the whole arc, along the path the arc splits over
// its children.  It is the slow, independent oracle.
//
// integrate_kernel_over_arc_scaled evaluates the same integral through the
// finite sum over the confluent-level sets A_l, with the dominant factor
// Fc^{|x|} pulled out so that deep radii never overflow.
// ---------------------------------------------------------------------------

Complex integrate_kernel_over_arc(const KernelSpec& spec, const Vertex& x,
                                  const Vertex& v);
ScaledComplex integrate_kernel_over_arc_scaled(const KernelSpec& spec,
                                               const Vertex& x, const Vertex& v);

// ---------------------------------------------------------------------------
// Polyspherical functions Phi_n (radial, lambda-polyharmonic of order n+1)
// and the absolute-value variant |Phi|_n.
// ---------------------------------------------------------------------------

ScaledComplex phi_n_scaled(const KernelSpec& spec, int radius);
Complex Phi_n(const KernelSpec& spec, const Vertex& x);

ScaledComplex phi_abs_n_scaled(const KernelSpec& spec, int radius);
double Phi_abs_n(const KernelSpec& spec, const Vertex& x);

// ---------------------------------------------------------------------------
// Large-radius behaviour: Phi_n(x) ~ ac (-1)^n |x|^n / (n! s^n) Fc^{|x|}.
// Requires the outside-disk regime.
// ---------------------------------------------------------------------------

ScaledComplex asymptotic_phi_n_scaled(const KernelSpec& spec, int radius);
Complex asymptotic_Phi_n(const KernelSpec& spec, int radius);

/// |Phi_n/asymptotic - 1| carried in the scaled representation with the
/// dominant factors cancelled algebraically, so the decay stays measurable
/// far below the double-precision noise floor of a naive ratio.
ScaledComplex asymptotic_deviation(const KernelSpec& spec, int radius);

/// | |Phi|_n / |Phi_n|  -  C(lambda)/|ac| |, same cancellation-free style.
ScaledComplex total_variation_deviation(const KernelSpec& spec, int radius);

/// C(lambda) = (1/(q+1)) (q^2 |Fc|^2 - 1) / (q |Fc|^2 - 1).
double C_lambda(const SpectralContext& ctx);

/// Smallest r <= 200 such that for all radii in [r, r+20] Phi_n is nonzero
/// and |Phi_n/asymptotic - 1| < 1.  ThresholdError when no such r exists.
int R_threshold(const KernelSpec& spec);

}  // namespace polytree
