#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gpw/expression.hpp"
#include "gpw/taylor2d.hpp"

namespace gpw {

/// Coefficients (gamma1, gamma2, gamma3) of the quadratic form
/// gamma1 X^2 + gamma2 XY + gamma3 Y^2.
using QuadraticForm = std::array<Complex, 3>;

/// L = sum_{0 <= k+l <= M} alpha_{k,l}(x, y) d_x^k d_y^l, with every
/// coefficient expanded about a common center.
class PdeOperator {
 public:
  /// `coeffs` is indexed by triangular_offset({k, l}) and must hold
  /// triangular_size(M) series sharing `center` and a common order.
  PdeOperator(int M, Point2 center, std::vector<TaylorSeries2> coeffs,
              std::optional<QuadraticForm> asserted_gamma = std::nullopt);

  int order() const noexcept { return M_; }
  Point2 center() const noexcept { return center_; }
  /// Truncation order of the coefficient series.
  int coefficient_order() const noexcept { return coeffs_.front().order(); }

  const TaylorSeries2& alpha(int k, int l) const;
  Complex alpha_at_center(int k, int l) const { return alpha(k, l)[{0, 0}]; }
  const std::optional<QuadraticForm>& asserted_gamma() const noexcept { return asserted_gamma_; }

  /// Largest |alpha_{k,l}(center)|.
  double coefficient_magnitude() const;

  /// Principal symbol sum_k alpha_{k,M-k}(center) X^k Y^{M-k}.
  Complex principal_symbol(Complex X, Complex Y) const;

 private:
  int M_;
  Point2 center_;
  std::vector<TaylorSeries2> coeffs_;
  std::optional<QuadraticForm> asserted_gamma_;
};

/// Center-independent description of an operator: a provider per
/// coefficient returning its truncated Taylor series at a given point.
/// An empty provider means the coefficient is identically zero.
class OperatorFamily {
 public:
  using Provider = std::function<TaylorSeries2(Point2, int)>;

  explicit OperatorFamily(int M);

  static OperatorFamily from_expressions(int M, const std::vector<std::pair<MultiIndex, Expression>>& terms);

  int order() const noexcept { return M_; }
  void set(MultiIndex kl, Provider provider);
  void set(MultiIndex kl, const Expression& expr);
  void assert_gamma(QuadraticForm gamma) { asserted_gamma_ = gamma; }

  PdeOperator at(Point2 center, int order) const;

 private:
  int M_;
  std::vector<Provider> providers_;
  std::optional<QuadraticForm> asserted_gamma_;
};

/// A = [[a11, a12], [a21, a22]] and D = diag(mu1, mu2) with Gamma = A^T D A.
struct SymbolFactorization {
  Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd A = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd D = Eigen::Matrix2cd::Zero();
  bool valid = false;
};

struct HypothesisReport {
  bool hyp1 = false;
  std::optional<SymbolFactorization> hyp2;
};

/// Symmetric matrix [[g1, g2/2], [g2/2, g3]] of a quadratic form.
Eigen::Matrix2cd gamma_matrix(const QuadraticForm& g);

/// Quadratic form whose (M/2)-th power is the principal symbol. Read off
/// directly for M = 2; for even M > 2 the asserted form is returned after
/// checking its power against the order-M coefficients. nullopt otherwise.
std::optional<QuadraticForm> principal_quadratic_form(const PdeOperator& op);

HypothesisReport check_hypotheses(const PdeOperator& op);

/// Completes the square in X first (gamma1 != 0), then in Y (gamma3 != 0),
/// and otherwise substitutes X = U + V, Y = U - V.
SymbolFactorization factor_principal_symbol(const Eigen::Matrix2cd& gamma);

/// L^A P = L e^P / e^P - alpha_{0,0}, truncated at Q. Needs P.order >= Q + M.
TaylorSeries2 apply_phase_operator(const PdeOperator& op, const TaylorSeries2& P, int Q);

/// L^A P + alpha_{0,0}: the Taylor expansion of L e^P / e^P.
TaylorSeries2 residual_series(const PdeOperator& op, const TaylorSeries2& P, int Q);

/// Largest coefficient magnitude among the individual summands
/// alpha_{k,l} E_{k,l} and alpha_{0,0} of the residual, truncated at Q.
double residual_scale(const PdeOperator& op, const TaylorSeries2& P, int Q);

}  // namespace gpw
