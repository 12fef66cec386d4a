#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpw/pde_operator.hpp"

namespace gpw {

struct Rect {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  double diameter() const;
  bool contains(Point2 p) const { return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax; }
};

/// A second order operator with a known closed-form solution of L u = 0.
struct TestCase {
  std::string name;
  OperatorFamily family;
  Rect domain;
  std::function<double(Point2)> exact;
  /// Scaled Taylor expansion of the exact solution about a center.
  std::function<TaylorSeries2(Point2, int)> exact_taylor;
};

/// Ad, Jc, JJ and cs. Jc carries the zeroth order coefficient
/// -(1 - 2x^2 - sin y), the sign for which L u = 0 holds.
std::vector<TestCase> builtin_cases();
/// Throws std::invalid_argument for an unknown name.
TestCase find_case(const std::string& name);
/// Jc with the zeroth order coefficient +(1 - 2x^2 - sin y).
TestCase jc_opposite_sign();

/// Scaled Taylor coefficients of the exact solution up to order n, in
/// triangular order. Throws std::domain_error where the solution's
/// recurrence is not valid (x0 <= 0 for the Bessel cases).
Eigen::VectorXcd exact_solution_taylor(const TestCase& c, Point2 center, int n);

struct ValidationReport {
  std::string name;
  int trials = 0;
  double max_residual = 0.0;
  bool passed = false;
};

constexpr double kValidationTolerance = 1e-9;

/// Largest |coefficient| of the Taylor expansion of L u through order 2,
/// over `trials` uniformly drawn centers in the case domain.
ValidationReport validate_case(const TestCase& c, int trials, std::uint64_t seed = 0);

}  // namespace gpw
