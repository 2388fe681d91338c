#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace polytree {

using Complex = std::complex<double>;

/// Exact rational scalar, used wherever partition identities must hold
/// exactly (ultrametric values, boundary arc measures, first-passage
/// regression fixtures).
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// ---------------------------------------------------------------------------
// Error taxonomy.  The CLI maps ParameterError/SpectrumError/RegimeError/
// DegenerateError/DomainError to exit code 2 and IoError to exit code 3.
// ---------------------------------------------------------------------------

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// lambda is on (or numerically too close to) the l2-spectrum [-rho, rho].
class SpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument of the principal square root lies on the open negative real axis.
class BranchCutError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requires |lambda| > rho but the context is resolvent-only.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadratic discriminant vanishes (lambda at +-rho).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Ball/tube domain too small for the requested operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No empirical asymptotic-threshold radius found below the search cap.
class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scaled value cannot be represented as a plain double-precision complex.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Complex helpers
// ---------------------------------------------------------------------------

bool is_finite(Complex z);
void require_finite(Complex z, const char* what);

/// Principal branch square root: for z = r e^{i phi} with phi in (-pi, pi),
/// returns sqrt(r) e^{i phi/2}.  The open negative real axis is rejected
/// (BranchCutError) instead of silently picking a one-sided limit.
Complex principal_sqrt(Complex z);

// ---------------------------------------------------------------------------
// ScaledComplex: value = mantissa * exp(log_scale).
//
// Quantities such as Fc(lambda)^|x| outgrow double range near |x| ~ 600, so
// every deep-radius computation is carried in this representation.  The
// mantissa is kept at modulus 1 (or exactly 0), which makes magnitude
// comparisons a plain comparison of log_abs().
// ---------------------------------------------------------------------------

struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale{0.0};

  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return {Complex(1.0, 0.0), 0.0}; }
  static ScaledComplex from(Complex v);
  static ScaledComplex from_log(double log_abs, double phase);

  bool is_zero() const { return mantissa == Complex(0.0, 0.0); }

  /// log of the modulus; -inf for zero.
  double log_abs() const;

  /// Modulus as a plain double (may overflow to inf for extreme scales).
  double abs_unchecked() const;

  /// Conversion to a plain complex; throws OverflowError when out of range.
  Complex to_complex() const;

  ScaledComplex& normalize();
};

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator*(const ScaledComplex& a, Complex b);
ScaledComplex operator*(Complex a, const ScaledComplex& b);
ScaledComplex operator*(const ScaledComplex& a, double b);
ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
ScaledComplex operator-(const ScaledComplex& a);

/// |a| as a ScaledComplex with zero phase.
ScaledComplex abs_scaled(const ScaledComplex& a);

/// base^k for nonzero base and any integer k, via log-modulus plus phase
/// accumulation; never overflows.
ScaledComplex pow_scaled(Complex base, long long k);

/// true iff |a| < |b|.
bool less_abs(const ScaledComplex& a, const ScaledComplex& b);

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

/// Parses "re" or "re,im" (e.g. "2" or "1,1").
Complex parse_complex(const std::string& text);

/// 17 significant digits, the CSV emission format.
std::string format_sig17(double v);

}  // namespace polytree
