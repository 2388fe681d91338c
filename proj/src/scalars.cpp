#include "polytree/scalars.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

namespace polytree {

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw ParameterError(std::string(what) + " is not finite");
  }
}

Complex principal_sqrt(Complex z) {
  require_finite(z, "principal_sqrt argument");
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw BranchCutError("principal_sqrt: argument on the negative real axis");
  }
  // std::sqrt implements exactly the phi in (-pi, pi) convention.
  Complex w = std::sqrt(Complex(z.real(), z.imag() == 0.0 ? 0.0 : z.imag()));
  return w;
}

ScaledComplex ScaledComplex::from(Complex v) {
  ScaledComplex s{v, 0.0};
  s.normalize();
  return s;
}

ScaledComplex ScaledComplex::from_log(double log_abs, double phase) {
  return ScaledComplex{Complex(std::cos(phase), std::sin(phase)), log_abs};
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(mantissa));
}

double ScaledComplex::abs_unchecked() const {
  if (is_zero()) return 0.0;
  return std::exp(log_abs());
}

Complex ScaledComplex::to_complex() const {
  if (is_zero()) return Complex(0.0, 0.0);
  const double la = log_abs();
  if (la > 709.0) {
    throw OverflowError("ScaledComplex exceeds double range (log|.| = " +
                        std::to_string(la) + ")");
  }
  return mantissa * std::exp(log_scale);
}

ScaledComplex& ScaledComplex::normalize() {
  if (mantissa == Complex(0.0, 0.0)) {
    log_scale = 0.0;
    return *this;
  }
  const double a = std::abs(mantissa);
  log_scale += std::log(a);
  mantissa /= a;
  return *this;
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) return ScaledComplex::zero();
  ScaledComplex r{a.mantissa * b.mantissa, a.log_scale + b.log_scale};
  return r.normalize();
}

ScaledComplex operator*(const ScaledComplex& a, Complex b) {
  return a * ScaledComplex::from(b);
}

ScaledComplex operator*(Complex a, const ScaledComplex& b) {
  return ScaledComplex::from(a) * b;
}

ScaledComplex operator*(const ScaledComplex& a, double b) {
  return a * Complex(b, 0.0);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (b.is_zero()) throw ParameterError("ScaledComplex division by zero");
  if (a.is_zero()) return ScaledComplex::zero();
  ScaledComplex r{a.mantissa / b.mantissa, a.log_scale - b.log_scale};
  return r.normalize();
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ScaledComplex& big = (a.log_scale >= b.log_scale) ? a : b;
  const ScaledComplex& small = (a.log_scale >= b.log_scale) ? b : a;
  const double d = small.log_scale - big.log_scale;  // <= 0
  ScaledComplex r{big.mantissa + small.mantissa * std::exp(d), big.log_scale};
  return r.normalize();
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
  return a + (-b);
}

ScaledComplex operator-(const ScaledComplex& a) {
  return ScaledComplex{-a.mantissa, a.log_scale};
}

ScaledComplex abs_scaled(const ScaledComplex& a) {
  if (a.is_zero()) return ScaledComplex::zero();
  return ScaledComplex{Complex(std::abs(a.mantissa), 0.0), a.log_scale};
}

ScaledComplex pow_scaled(Complex base, long long k) {
  if (k == 0) return ScaledComplex::one();
  if (base == Complex(0.0, 0.0)) {
    if (k > 0) return ScaledComplex::zero();
    throw ParameterError("pow_scaled: negative power of zero");
  }
  const double la = static_cast<double>(k) * std::log(std::abs(base));
  const double ph = static_cast<double>(k) * std::arg(base);
  return ScaledComplex::from_log(la, ph);
}

bool less_abs(const ScaledComplex& a, const ScaledComplex& b) {
  return a.log_abs() < b.log_abs();
}

Complex parse_complex(const std::string& text) {
  const auto parse_part = [](const std::string& s) -> double {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParameterError("cannot parse number '" + s + "'");
    }
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) {
      throw ParameterError("trailing characters in number '" + s + "'");
    }
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    return Complex(parse_part(text), 0.0);
  }
  return Complex(parse_part(text.substr(0, comma)),
                 parse_part(text.substr(comma + 1)));
}

std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

}  // namespace polytree
