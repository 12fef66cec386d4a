#include "gpw/cases.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gpw/special_functions.hpp"

namespace gpw {

namespace {

using Terms = std::vector<std::pair<MultiIndex, Expression>>;

OperatorFamily family(const Terms& terms) { return OperatorFamily::from_expressions(2, terms); }

// u(x, y) = f(x) g(y) from 1D scaled Taylor coefficients.
TaylorSeries2 separable(Point2 c, int n, const std::vector<double>& fx, const std::vector<double>& gy) {
  TaylorSeries2 s(c, n);
  for (int K = 0; K <= n; ++K)
    for (int j = 0; j <= K; ++j) s[{K - j, j}] = fx[K - j] * gy[j];
  return s;
}

TaylorSeries2 airy_of_sum(Point2 c, int n) {
  const std::vector<double> a = airy_taylor(c.x + c.y, n);
  TaylorSeries2 s(c, n);
  for (int K = 0; K <= n; ++K) {
    double binom = 1.0;
    for (int i = 0; i <= K; ++i) {
      s[{i, K - i}] = a[K] * binom;
      binom = binom * (K - i) / (i + 1);
    }
  }
  return s;
}

TestCase jc_with_sign(double sign, std::string name) {
  Terms terms{{{2, 0}, Expression::parse("x^2")},
              {{0, 2}, Expression::parse("x^2")},
              {{1, 0}, Expression::parse("x")},
              {{0, 1}, Expression::parse("cos(y)")},
              {{0, 0}, Expression::parse(sign > 0 ? "1 - 2*x^2 - sin(y)" : "-(1 - 2*x^2 - sin(y))")}};
  return {std::move(name), family(terms), {1.0, 4.0, 0.0, 2.0 * std::numbers::pi},
          [](Point2 p) { return bessel_j(1, p.x).value * std::cos(p.y); },
          [](Point2 c, int n) { return separable(c, n, bessel_taylor(1, c.x, n), cos_taylor(c.y, n)); }};
}

}  // namespace

double Rect::diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }

std::vector<TestCase> builtin_cases() {
  std::vector<TestCase> cases;
  cases.push_back({"Ad",
                   family({{{2, 0}, Expression::parse("-1")},
                           {{0, 2}, Expression::parse("-1")},
                           {{0, 0}, Expression::parse("2*(x+y)")}}),
                   {-2.0, 2.0, -2.0, 2.0},
                   [](Point2 p) { return airy_ai(p.x + p.y).value; },
                   airy_of_sum});
  cases.push_back(jc_with_sign(-1.0, "Jc"));
  cases.push_back({"JJ",
                   family({{{2, 0}, Expression::parse("x^2")},
                           {{0, 2}, Expression::parse("y^2")},
                           {{1, 0}, Expression::parse("x")},
                           {{0, 1}, Expression::parse("y")},
                           {{0, 0}, Expression::parse("x^2 + y^2 - 1")}}),
                   {1.0, 3.0, 1.0, 3.0},
                   [](Point2 p) { return bessel_j(0, p.x).value * bessel_j(1, p.y).value; },
                   [](Point2 c, int n) {
                     return separable(c, n, bessel_taylor(0, c.x, n), bessel_taylor(1, c.y, n));
                   }});
  cases.push_back({"cs",
                   family({{{2, 0}, Expression::parse("1")},
                           {{1, 1}, Expression::parse("0.2*cos(x)*sin(y)")},
                           {{0, 2}, Expression::parse("-2")},
                           {{0, 0}, Expression::parse("0.2*sin(x)*cos(y) - 1")}}),
                   {-1.0, 1.0, -1.0, 1.0},
                   [](Point2 p) { return std::cos(p.x) * std::sin(p.y); },
                   [](Point2 c, int n) { return separable(c, n, cos_taylor(c.x, n), sin_taylor(c.y, n)); }});
  return cases;
}

TestCase find_case(const std::string& name) {
  for (auto& c : builtin_cases())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown case '" + name + "' (expected Ad, Jc, JJ or cs)");
}

TestCase jc_opposite_sign() { return jc_with_sign(1.0, "Jc-opposite-sign"); }

Eigen::VectorXcd exact_solution_taylor(const TestCase& c, Point2 center, int n) {
  const TaylorSeries2 s = c.exact_taylor(center, n);
  const auto coeffs = s.coefficients();
  Eigen::VectorXcd F(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) F(static_cast<Eigen::Index>(k)) = coeffs[k];
  return F;
}

ValidationReport validate_case(const TestCase& c, int trials, std::uint64_t seed) {
  constexpr int kOrder = 2;
  ValidationReport report{c.name, trials, 0.0, false};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(c.domain.xmin, c.domain.xmax);
  std::uniform_real_distribution<double> uy(c.domain.ymin, c.domain.ymax);
  for (int t = 0; t < trials; ++t) {
    const Point2 center{ux(rng), uy(rng)};
    const PdeOperator op = c.family.at(center, kOrder);
    const TaylorSeries2 u = c.exact_taylor(center, kOrder + op.order());
    TaylorSeries2 Lu(center, kOrder);
    for (int K = 0; K <= op.order(); ++K)
      for (int l = 0; l <= K; ++l)
        Lu += multiply(op.alpha(K - l, l), partial(u, {K - l, l}).resized(kOrder), kOrder);
    report.max_residual = std::max(report.max_residual, Lu.max_abs());
  }
  report.passed = report.max_residual < kValidationTolerance;
  return report;
}

}  // namespace gpw
