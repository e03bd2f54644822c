#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace av321 {

/// Exact integer coefficient sequence indexed by length. All arithmetic is
/// integer convolution and long division; nothing here touches floating
/// point except the presentation helpers.
struct CoefficientSequence {
  std::vector<mpz_class> coefficients;

  const mpz_class& at(int n) const { return coefficients.at(n); }
  int max_index() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Catalan numbers C_0..C_N via the convolution recurrence.
CoefficientSequence catalan_counts(int N);

/// Counts of 2-rigid members of Av(321) by length, including the empty
/// permutation at index 0. Computed by exact long division: the rigid series
/// r satisfies r * (2 + t) = 1 + c where c is the Catalan series.
CoefficientSequence rigid_counts(int N);

struct RatioPoint {
  int n = 0;
  mpz_class numerator;    // r_n
  mpz_class denominator;  // c_n
  double ratio = 0.0;
  double distance_to_4_9 = 0.0;
};

/// r_n / c_n for n = 0..N with the distance to 4/9, rendered as decimals.
std::vector<RatioPoint> rigid_ratio_profile(int N);

std::string format_coefficient(const mpz_class& v);

}  // namespace av321
