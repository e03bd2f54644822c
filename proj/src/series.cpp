#include "av321/series.hpp"

#include <cmath>
#include <stdexcept>

namespace av321 {

CoefficientSequence catalan_counts(int N) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  CoefficientSequence s;
  s.coefficients.assign(N + 1, 0);
  s.coefficients[0] = 1;
  for (int n = 1; n <= N; ++n) {
    mpz_class acc = 0;
    for (int i = 0; i < n; ++i) acc += s.coefficients[i] * s.coefficients[n - 1 - i];
    s.coefficients[n] = acc;
  }
  return s;
}

CoefficientSequence rigid_counts(int N) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  const CoefficientSequence c = catalan_counts(N);
  CoefficientSequence r;
  r.coefficients.assign(N + 1, 0);
  // (2 + t) * r = 1 + c, so 2 r_n + r_{n-1} = [n = 0] + c_n.
  for (int n = 0; n <= N; ++n) {
    mpz_class num = c.coefficients[n] + (n == 0 ? 1 : 0) -
                    (n > 0 ? r.coefficients[n - 1] : mpz_class(0));
    if (num % 2 != 0) throw std::logic_error("rigid series division is not exact");
    r.coefficients[n] = num / 2;
  }
  return r;
}

std::vector<RatioPoint> rigid_ratio_profile(int N) {
  if (N < 2) throw std::invalid_argument("ratio profile needs N >= 2");
  const CoefficientSequence c = catalan_counts(N);
  const CoefficientSequence r = rigid_counts(N);
  std::vector<RatioPoint> out;
  out.reserve(N + 1);
  for (int n = 0; n <= N; ++n) {
    RatioPoint pt;
    pt.n = n;
    pt.numerator = r.coefficients[n];
    pt.denominator = c.coefficients[n];
    pt.ratio = mpq_class(pt.numerator, pt.denominator).get_d();
    pt.distance_to_4_9 = std::abs(pt.ratio - 4.0 / 9.0);
    out.push_back(pt);
  }
  return out;
}

std::string format_coefficient(const mpz_class& v) { return v.get_str(); }

}  // namespace av321
