#pragma once

#include <vector>

#include "polytree/scalars.hpp"

namespace polytree {

/// First-passage probabilities f^{(n)}(d) of the simple random walk: the
/// probability of first hitting a vertex at distance d at step n.  Built
/// from the distance-1 convolution recurrence
///   f^{(1)}(1) = 1/(q+1),
///   f^{(n)}(1) = (q/(q+1)) sum_{i+j=n-1} f^{(i)}(1) f^{(j)}(1),
/// and from f(d) = f(d-1) * f(1) for larger distances.  Entirely decoupled
/// from the closed-form F(lambda), which is what makes it an oracle.
struct FirstPassageTable {
  int q;
  int max_distance;
  int max_steps;
  // coeff[d][n], 1 <= d <= max_distance, 0 <= n <= max_steps (index 0 unused)
  std::vector<std::vector<double>> coeff;
};

FirstPassageTable first_passage_table(int q, int max_distance, int max_steps);

/// Exact-rational variant for regression fixtures; capped at 200 steps.
struct RationalFirstPassageTable {
  int q;
  int max_distance;
  int max_steps;
  std::vector<std::vector<Rational>> coeff;
};

RationalFirstPassageTable first_passage_table_exact(int q, int max_distance,
                                                    int max_steps);

struct SeriesResult {
  Complex value;
  /// Rigorous for real lambda > rho via f^{(n)}(d) <= q^{-d/2} rho^n; for
  /// complex lambda the same bound with r = |lambda| is reported as a
  /// heuristic.
  double tail_bound;
};

/// Truncated series sum_{n<=N} f^{(n)}(d) / lambda^n; RegimeError when
/// |lambda| <= rho (the series does not converge there).
SeriesResult truncated_series(const FirstPassageTable& table, int d,
                              Complex lambda);

}  // namespace polytree
