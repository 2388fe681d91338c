#include "polytree/oracle.hpp"

#include <cmath>

namespace polytree {

namespace {

template <typename Scalar>
std::vector<std::vector<Scalar>> build_coefficients(int q, int max_distance,
                                                    int max_steps) {
  if (q < 2) throw ParameterError("first_passage_table: q must be >= 2");
  if (max_distance < 1 || max_steps < 1) {
    throw ParameterError("first_passage_table: need max_distance, max_steps >= 1");
  }
  std::vector<std::vector<Scalar>> coeff(
      max_distance + 1, std::vector<Scalar>(max_steps + 1, Scalar(0)));
  const Scalar step_towards = Scalar(1) / Scalar(q + 1);
  const Scalar step_away = Scalar(q) / Scalar(q + 1);
  coeff[1][1] = step_towards;
  for (int n = 2; n <= max_steps; ++n) {
    // step away (distance 2), then two consecutive distance-1 passages
    Scalar acc(0);
    for (int i = 1; i <= n - 2; ++i) {
      acc += coeff[1][i] * coeff[1][n - 1 - i];
    }
    coeff[1][n] = step_away * acc;
  }
  for (int d = 2; d <= max_distance; ++d) {
    for (int n = d; n <= max_steps; ++n) {
      Scalar acc(0);
      for (int i = d - 1; i <= n - 1; ++i) {
        acc += coeff[d - 1][i] * coeff[1][n - i];
      }
      coeff[d][n] = acc;
    }
  }
  return coeff;
}

}  // namespace

FirstPassageTable first_passage_table(int q, int max_distance, int max_steps) {
  return FirstPassageTable{
      q, max_distance, max_steps,
      build_coefficients<double>(q, max_distance, max_steps)};
}

RationalFirstPassageTable first_passage_table_exact(int q, int max_distance,
                                                    int max_steps) {
  if (max_steps > 200) {
    throw ParameterError("exact first-passage table capped at 200 steps");
  }
  return RationalFirstPassageTable{
      q, max_distance, max_steps,
      build_coefficients<Rational>(q, max_distance, max_steps)};
}

SeriesResult truncated_series(const FirstPassageTable& table, int d,
                              Complex lambda) {
  if (d < 1 || d > table.max_distance) {
    throw ParameterError("truncated_series: distance outside the table");
  }
  require_finite(lambda, "lambda");
  const double rho = 2.0 * std::sqrt(static_cast<double>(table.q)) / (table.q + 1);
  const double r = std::abs(lambda);
  if (r <= rho) {
    throw RegimeError("truncated_series requires |lambda| > rho");
  }
  const Complex inv = 1.0 / lambda;
  Complex value(0.0, 0.0);
  Complex power(1.0, 0.0);
  for (int n = 1; n <= table.max_steps; ++n) {
    power *= inv;
    value += table.coeff[d][n] * power;
  }
  // tail <= sum_{n>N} q^{-d/2} rho^n r^{-n}
  const double ratio = rho / r;
  const double tail = std::pow(static_cast<double>(table.q), -0.5 * d) *
                      std::pow(ratio, table.max_steps + 1) / (1.0 - ratio);
  return SeriesResult{value, tail};
}

}  // namespace polytree
