#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "gpw/taylor2d.hpp"

namespace gpw::testing {

inline TaylorSeries2 random_series(std::mt19937_64& rng, Point2 c, int order, bool zero_constant = false,
                                   double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  TaylorSeries2 s(c, order);
  for (int n = 0; n <= order; ++n)
    for (int j = 0; j <= n; ++j) s[{n - j, j}] = Complex(u(rng), u(rng));
  if (zero_constant) s[{0, 0}] = 0.0;
  return s;
}

inline double max_abs_diff(const TaylorSeries2& a, const TaylorSeries2& b) {
  double m = 0.0;
  const int order = std::min(a.order(), b.order());
  for (int n = 0; n <= order; ++n)
    for (int j = 0; j <= n; ++j) m = std::max(m, std::abs(a[{n - j, j}] - b[{n - j, j}]));
  return m;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int t = 2; t <= n; ++t) r *= t;
  return r;
}

}  // namespace gpw::testing
